#include "packlab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace packlab {

namespace {

using Rng = std::mt19937_64;

long long rnd(Rng& g, long long lo, long long hi) {
  return lo + (long long)(g() % (unsigned long long)(hi - lo + 1));
}

template <typename T>
T pick(Rng& g, std::initializer_list<T> xs) {
  auto it = xs.begin();
  std::advance(it, (size_t)rnd(g, 0, (long long)xs.size() - 1));
  return *it;
}

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

long long parse_ll(const std::string& s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer: " + s);
  return v;
}

// Accepts "p/q" or a plain decimal like "0.25".
Rational parse_rational(const std::string& s) {
  size_t slash = s.find('/');
  if (slash != std::string::npos)
    return Rational(parse_ll(trim(s.substr(0, slash))),
                    parse_ll(trim(s.substr(slash + 1))));
  size_t dot = s.find('.');
  if (dot == std::string::npos) return Rational(parse_ll(s));
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  long long den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  long long num = (head.empty() || head == "-" ? 0 : parse_ll(head)) * den;
  long long frac = tail.empty() ? 0 : parse_ll(tail);
  num += (s[0] == '-' ? -frac : frac);
  return Rational(num, den);
}

long long round_to_ll(const Rational& x) {
  // nearest integer, half away from zero
  long long n = x.num(), d = x.den();
  if (n >= 0) return (2 * n + d) / (2 * d);
  return -((-2 * n + d) / (2 * d));
}

}  // namespace

SweepConfig SweepConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return from_stream(in);
}

SweepConfig SweepConfig::from_stream(std::istream& in) {
  SweepConfig cfg;
  long long scale = 600;
  std::vector<Rational> ratios;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key = value: " + t);
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key == "S") {
      for (const std::string& v : split_list(value)) cfg.S_values.push_back(parse_ll(v));
    } else if (key == "pairs") {
      for (const std::string& v : split_list(value)) {
        size_t colon = v.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("pairs entries must be s:l, got " + v);
        cfg.cells.push_back({parse_ll(trim(v.substr(0, colon))),
                             parse_ll(trim(v.substr(colon + 1)))});
      }
    } else if (key == "ratios") {
      for (const std::string& v : split_list(value)) ratios.push_back(parse_rational(v));
    } else if (key == "scale") {
      scale = parse_ll(value);
    } else if (key == "policies") {
      for (const std::string& v : split_list(value))
        cfg.policies.push_back(PolicySpec::parse(v));
    } else if (key == "adversary") {
      if (value == "theorem2") cfg.source = Source::Adaptive;
      else if (value == "example1") cfg.source = Source::Example1;
      else if (value == "example2") cfg.source = Source::Example2;
      else if (value == "example3") cfg.source = Source::Example3;
      else if (value == "example4") cfg.source = Source::Example4;
      else throw std::invalid_argument("unknown adversary: " + value);
    } else if (key == "best_response") {
      cfg.best_response = value == "true" || value == "1";
    } else if (key == "seed") {
      cfg.seed = (unsigned long long)parse_ll(value);
    } else if (key == "trials") {
      cfg.trials = parse_ll(value);
    } else if (key == "out") {
      cfg.out_path = value;
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  for (const Rational& x : ratios)
    cfg.cells.push_back({scale, round_to_ll(x * Rational(scale))});
  if (cfg.S_values.empty()) throw std::invalid_argument("config needs S");
  if (cfg.cells.empty()) throw std::invalid_argument("config needs pairs or ratios");
  if (cfg.policies.empty()) throw std::invalid_argument("config needs policies");
  return cfg;
}

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  for (long long S : cfg.S_values) {
    const Params p(S);
    for (auto [s, l] : cfg.cells) {
      for (const PolicySpec& ps : cfg.policies) {
        SweepRow row;
        row.S = S;
        row.s = s;
        row.l = l;
        row.policy = ps.id();
        row.range = classify_range(s, l);
        row.lower_bound = s + l >= 1 ? lower_bound_ratio(s, l) : Rational(1);
        try {
          OnlinePolicy policy(ps, p, s, l);
          GameResult g = [&] {
            if (cfg.source == SweepConfig::Source::Adaptive)
              return run_game_adaptive(policy, cfg.best_response).game;
            const int id = cfg.source == SweepConfig::Source::Example1   ? 1
                           : cfg.source == SweepConfig::Source::Example2 ? 2
                           : cfg.source == SweepConfig::Source::Example3 ? 3
                                                                         : 4;
            return run_game(policy, example_sequence(id, s, l, p));
          }();
          row.alg_cost = g.alg_cost;
          row.opt_cost = g.opt_cost;
          row.ratio = g.ratio;
          row.adjusted_ratio = g.adjusted_ratio;
        } catch (const std::exception& e) {
          row.note = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return std::tie(a.S, a.s, a.l, a.policy) < std::tie(b.S, b.s, b.l, b.policy);
  });
  return rows;
}

void write_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "S,s,l,policy,alg_cost,opt_cost,ratio,adjusted_ratio,lower_bound,range\n";
  for (const SweepRow& r : rows) {
    out << r.S << ',' << r.s << ',' << r.l << ',' << r.policy << ',';
    if (r.alg_cost) out << *r.alg_cost;
    else out << "NA";
    out << ',';
    if (r.opt_cost) out << *r.opt_cost;
    else out << "NA";
    out << ',';
    if (r.ratio) out << r.ratio->fraction_str();
    else out << "NA";
    out << ',';
    if (r.adjusted_ratio) out << r.adjusted_ratio->fraction_str();
    else out << "NA";
    out << ',' << r.lower_bound.fraction_str() << ',' << to_string(r.range) << '\n';
  }
}

std::vector<CurveRow> ratio_curve(long long S, const Rational& step,
                                  const Rational& max_x, long long scale,
                                  const StepHook& hook) {
  if (step <= Rational(0)) throw std::invalid_argument("curve step must be positive");
  if (scale < 1) throw std::invalid_argument("curve scale must be positive");
  const Params p(S);
  std::vector<CurveRow> rows;
  for (Rational x = step; x <= max_x; x = x + step) {
    const long long s = scale;
    const long long l = round_to_ll(x * Rational(scale));
    if (l < 1) continue;
    OnlinePolicy policy(PolicySpec::parse("two-phase"), p, s, l);
    AdaptiveGameResult g = run_game_adaptive(policy, true, hook);
    rows.push_back({x, g.game.adjusted_ratio, lower_bound_ratio(s, l)});
  }
  return rows;
}

void write_curve(std::span<const CurveRow> rows, std::ostream& out) {
  out << "# l_over_s adjusted_ratio lower_bound\n";
  for (const CurveRow& r : rows)
    out << r.x.decimal_str(9) << ' ' << r.adjusted.decimal_str(9) << ' '
        << r.bound.decimal_str(9) << '\n';
}

// ---------------------------------------------------------------------------
// Verification properties
// ---------------------------------------------------------------------------

namespace {

void fail(PropertyReport& r, std::string detail) {
  if (r.pass) {
    r.pass = false;
    r.detail = std::move(detail);
  }
}

std::string show_bins(std::span<const long long> bins) {
  std::string s = "[";
  for (size_t i = 0; i < bins.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(bins[i]);
  }
  return s + "]";
}

std::vector<long long> gen_bins(Rng& g, long long n, const Params& p,
                                int big_percent) {
  std::vector<long long> bins;
  for (long long i = 0; i < n; ++i) {
    if (rnd(g, 0, 99) < big_percent) bins.push_back(rnd(g, p.S, p.M));
    else bins.push_back(rnd(g, 1, p.M));
  }
  return bins;
}

PropertyReport prop_thrifty_fill_sets() {
  PropertyReport r;
  r.name = "thrifty_fill_sets";
  for (long long S : {2LL, 3LL, 4LL, 10LL}) {
    const Params p(S);
    for (long long bin = p.S; bin <= p.M; ++bin) {
      for (long long s = 3; s <= 4; ++s) {
        for (long long l = 3; l <= 4; ++l) {
          ++r.cases;
          auto fills = enumerate_thrifty_fills(bin, {s, l}, p);
          if (fills.empty()) {
            fail(r, "no fills for S=" + std::to_string(S) + " bin=" + std::to_string(bin));
            return r;
          }
          for (const Fill& f : fills) {
            if (f.empty()) {
              fail(r, "empty fill offered while items fit, S=" + std::to_string(S) +
                          " bin=" + std::to_string(bin));
              return r;
            }
          }
        }
      }
    }
  }
  return r;
}

PropertyReport prop_reasonable_fill_sets() {
  PropertyReport r;
  r.name = "reasonable_fill_sets";
  for (long long S : {2LL, 3LL, 4LL, 10LL}) {
    const Params p(S);
    for (long long bin = p.S; bin <= p.M; ++bin) {
      for (Inventory inv : {Inventory{3, 1}, Inventory{5, 5}}) {
        ++r.cases;
        auto canonical = enumerate_reasonable_fills(bin, p);
        auto thrifty = enumerate_thrifty_fills(bin, inv, p);
        for (const Fill& f : canonical) {
          if (std::find(thrifty.begin(), thrifty.end(), f) == thrifty.end()) {
            fail(r, "canonical fill (" + std::to_string(f.num_s) + "," +
                        std::to_string(f.num_l) + ") not thrifty for S=" +
                        std::to_string(S) + " bin=" + std::to_string(bin));
            return r;
          }
        }
      }
    }
  }
  return r;
}

// Random trace of mixed quality for exercising the predicate implications.
Trace gen_trace(Rng& g) {
  const Params p(pick(g, {2LL, 3LL, 4LL, 10LL}));
  const long long s = rnd(g, 0, 5), l = rnd(g, 0, 5);
  Trace t{p, s, l, {}};
  Inventory inv{s, l};
  const int style = (int)rnd(g, 0, 2);
  const long long n = rnd(g, 0, 6);
  for (long long i = 0; i < n; ++i) {
    const long long bin = rnd(g, 1, p.M);
    Fill f;
    if (style == 2) {
      const long long a = rnd(g, 0, std::min(inv.s_rem, bin / p.S));
      const long long rest = bin - a * p.S;
      const long long b = rnd(g, 0, std::min(inv.l_rem, rest / p.L));
      f = {a, b};
    } else {
      auto fills = enumerate_thrifty_fills(bin, inv, p);
      if (style == 0 && bin >= p.S && inv.s_rem >= 3 && inv.l_rem >= 1) {
        auto canonical = enumerate_reasonable_fills(bin, p);
        f = canonical[(size_t)rnd(g, 0, (long long)canonical.size() - 1)];
      } else {
        f = fills[(size_t)rnd(g, 0, (long long)fills.size() - 1)];
      }
    }
    t.entries.push_back({bin, f});
    inv.s_rem -= f.num_s;
    inv.l_rem -= f.num_l;
    if (inv.empty()) break;
  }
  return t;
}

PropertyReport prop_predicate_chain(Rng g, long long trials) {
  PropertyReport r;
  r.name = "predicate_chain";
  for (long long t = 0; t < trials; ++t) {
    Trace tr = gen_trace(g);
    ++r.cases;
    if (is_reasonable_trace(tr) && !is_thrifty_trace(tr)) {
      fail(r, "reasonable trace not thrifty");
      return r;
    }
    if (is_thrifty_trace(tr) && !is_valid_trace(tr)) {
      fail(r, "thrifty trace not valid");
      return r;
    }
  }
  return r;
}

PropertyReport prop_reasonable_pair_sync(Rng g, long long trials) {
  PropertyReport r;
  r.name = "reasonable_pair_sync";
  for (long long t = 0; t < trials; ++t) {
    const Params p(pick(g, {2LL, 3LL, 4LL, 10LL}));
    Inventory a{rnd(g, 3, 12), rnd(g, 1, 8)};
    Inventory b = a;
    const long long n = rnd(g, 1, 12);
    for (long long i = 0; i < n; ++i) {
      if (a.s_rem < 3 || a.l_rem < 1 || b.s_rem < 3 || b.l_rem < 1) break;
      const long long bin = rnd(g, 0, 99) < 75 ? rnd(g, p.S, p.M) : rnd(g, 1, p.M);
      if (bin >= p.S) {
        auto fills = enumerate_reasonable_fills(bin, p);
        const Fill fa = fills[(size_t)rnd(g, 0, (long long)fills.size() - 1)];
        const Fill fb = fills[(size_t)rnd(g, 0, (long long)fills.size() - 1)];
        a.s_rem -= fa.num_s;
        a.l_rem -= fa.num_l;
        b.s_rem -= fb.num_s;
        b.l_rem -= fb.num_l;
      }
      ++r.cases;
      if (a.s_rem + 2 * a.l_rem != b.s_rem + 2 * b.l_rem) {
        fail(r, "weighted remainders diverged: " + std::to_string(a.s_rem) + "+2*" +
                    std::to_string(a.l_rem) + " vs " + std::to_string(b.s_rem) +
                    "+2*" + std::to_string(b.l_rem));
        return r;
      }
    }
  }
  return r;
}

PropertyReport prop_dp_matches_bruteforce(Rng g, long long trials) {
  PropertyReport r;
  r.name = "dp_matches_bruteforce";
  for (long long t = 0; t < trials; ++t) {
    const Params p(pick(g, {2LL, 3LL, 4LL}));
    const long long s = rnd(g, 0, 4), l = rnd(g, 0, 4);
    auto bins = gen_bins(g, rnd(g, 0, 8), p, 0);
    ++r.cases;
    auto dp = opt_cost(bins, s, l, p);
    auto bf = opt_bruteforce(bins, s, l, p);
    if (dp != bf) {
      fail(r, "S=" + std::to_string(p.S) + " s=" + std::to_string(s) + " l=" +
                  std::to_string(l) + " sigma=" + show_bins(bins) + " dp=" +
                  (dp ? std::to_string(*dp) : "infeasible") + " brute=" +
                  (bf ? std::to_string(*bf) : "infeasible"));
      return r;
    }
  }
  return r;
}

PropertyReport prop_opt_at_least_item_volume(Rng g, long long trials) {
  PropertyReport r;
  r.name = "opt_at_least_item_volume";
  for (long long t = 0; t < trials; ++t) {
    const Params p(pick(g, {2LL, 3LL, 4LL, 10LL}));
    const long long s = rnd(g, 0, 5), l = rnd(g, 0, 5);
    auto bins = gen_bins(g, rnd(g, 1, 10), p, 80);
    auto dp = opt_cost(bins, s, l, p);
    if (!dp) {
      ++r.skipped;
      continue;
    }
    ++r.cases;
    if (*dp < s * p.S + l * p.L) {
      fail(r, "opt=" + std::to_string(*dp) + " below item volume for sigma=" +
                  show_bins(bins));
      return r;
    }
  }
  return r;
}

PropertyReport prop_opt_monotone_in_items(Rng g, long long trials) {
  PropertyReport r;
  r.name = "opt_monotone_in_items";
  for (long long t = 0; t < trials; ++t) {
    const Params p(pick(g, {2LL, 3LL, 4LL, 10LL}));
    const long long s = rnd(g, 0, 5), l = rnd(g, 0, 5);
    auto bins = gen_bins(g, rnd(g, 1, 10), p, 80);
    auto full = opt_cost(bins, s, l, p);
    if (!full) {
      ++r.skipped;
      continue;
    }
    const long long s2 = rnd(g, 0, s), l2 = rnd(g, 0, l);
    auto sub = opt_cost(bins, s2, l2, p);
    ++r.cases;
    if (!sub) {
      fail(r, "item subset infeasible although the full set fits, sigma=" +
                  show_bins(bins));
      return r;
    }
    if (*sub > *full) {
      fail(r, "opt grew after removing items, sigma=" + show_bins(bins));
      return r;
    }
  }
  return r;
}

PropertyReport prop_r_equals_opt_single_type(Rng g, long long trials) {
  PropertyReport r;
  r.name = "r_equals_opt_single_type";
  for (long long t = 0; t < trials; ++t) {
    const Params p(pick(g, {2LL, 3LL, 4LL, 10LL}));
    auto bins = gen_bins(g, rnd(g, 1, 10), p, 80);
    const long long c = rnd(g, 0, 6);
    ++r.cases;
    if (max_reasonable_cost(bins, c, 0, p) != opt_cost(bins, c, 0, p) ||
        max_reasonable_cost(bins, 0, c, p) != opt_cost(bins, 0, c, p)) {
      fail(r, "single-type max/min costs differ, sigma=" + show_bins(bins) +
                  " count=" + std::to_string(c));
      return r;
    }
  }
  return r;
}

// The four structural inequalities tying the costliest balanced packing to
// optimal packings of converted item sets.
PropertyReport prop_r_vs_opt_bound(Rng base, long long trials, int which) {
  static const char* names[] = {"r_le_opt_small_equivalent", "r_le_opt_large_equivalent",
                                "r_small_only_vs_opt_mixed", "r_large_only_vs_opt_mixed"};
  PropertyReport r;
  r.name = names[which];
  Rng g = base;
  long long attempts = 0;
  while (r.cases < trials && attempts < 40 * trials) {
    ++attempts;
    const Params p(pick(g, {3LL, 10LL}));
    auto bins = gen_bins(g, rnd(g, 1, 10), p, 85);
    long long s = rnd(g, 0, 6), l = rnd(g, 0, 6);
    std::optional<long long> lhs, rhs_opt;
    long long slack = 0;
    switch (which) {
      case 0: {  // R(s,l) <= OPT(s+2l, 0) + l(2S-3)
        lhs = max_reasonable_cost(bins, s, l, p);
        rhs_opt = opt_cost(bins, s + 2 * l, 0, p);
        slack = l * (2 * p.S - 3);
        break;
      }
      case 1: {  // 2k = s+2l: R(s,l) <= OPT(0,k) + (s+l-k-1)L + M
        s -= s % 2;
        const long long k = s / 2 + l;
        lhs = max_reasonable_cost(bins, s, l, p);
        rhs_opt = opt_cost(bins, 0, k, p);
        slack = (s + l - k - 1) * p.L + p.M;
        break;
      }
      case 2: {  // k >= s+2l: R(k,0) <= OPT(s,l) + (k-s-l-1)L + M
        const long long k = s + 2 * l + rnd(g, 0, 3);
        lhs = max_reasonable_cost(bins, k, 0, p);
        rhs_opt = opt_cost(bins, s, l, p);
        slack = (k - s - l - 1) * p.L + p.M;
        break;
      }
      default: {  // 2k >= s+2l: R(0,k) <= OPT(s,l) + min{0,l-s}S + (k-l)M
        const long long k = (s + 2 * l + 1) / 2 + rnd(g, 0, 3);
        lhs = max_reasonable_cost(bins, 0, k, p);
        rhs_opt = opt_cost(bins, s, l, p);
        slack = std::min(0LL, l - s) * p.S + (k - l) * p.M;
        break;
      }
    }
    if (!lhs || !rhs_opt) {
      ++r.skipped;
      continue;
    }
    ++r.cases;
    if (*lhs > *rhs_opt + slack) {
      fail(r, "S=" + std::to_string(p.S) + " s=" + std::to_string(s) + " l=" +
                  std::to_string(l) + " sigma=" + show_bins(bins) + " lhs=" +
                  std::to_string(*lhs) + " rhs=" + std::to_string(*rhs_opt + slack));
      return r;
    }
  }
  return r;
}

OnlinePolicy random_two_phase(Rng& g, Params& p_out, long long& s_out,
                              long long& l_out) {
  const Params p(pick(g, {2LL, 3LL, 4LL, 10LL, 25LL}));
  long long s = rnd(g, 0, 10), l = rnd(g, 0, 10);
  if (s + l == 0) s = 1;
  p_out = p;
  s_out = s;
  l_out = l;
  return OnlinePolicy(PolicySpec::parse("two-phase"), p, s, l);
}

PropertyReport prop_two_phase_trace_quality(Rng g, long long trials) {
  PropertyReport r;
  r.name = "two_phase_trace_quality";
  for (long long t = 0; t < trials; ++t) {
    Params p(2);
    long long s = 0, l = 0;
    OnlinePolicy policy = random_two_phase(g, p, s, l);
    auto prefix = gen_bins(g, rnd(g, 0, 2 * (s + l) + 2), p, 50);
    GameResult res = run_game_drained(policy, prefix);
    ++r.cases;
    if (!is_complete_trace(res.alg_trace)) {
      fail(r, "trace incomplete, sigma=" + show_bins(res.sigma));
      return r;
    }
    if (!is_reasonable_trace(res.alg_trace)) {
      fail(r, "two-phase trace not reasonable, S=" + std::to_string(p.S) + " s=" +
                  std::to_string(s) + " l=" + std::to_string(l) + " sigma=" +
                  show_bins(res.sigma));
      return r;
    }
    if (res.alg_cost < s * p.S + l * p.L) {
      fail(r, "cost below item volume, sigma=" + show_bins(res.sigma));
      return r;
    }
  }
  return r;
}

PropertyReport prop_two_phase_counter_relations(Rng g, long long trials) {
  PropertyReport r;
  r.name = "two_phase_counter_relations";
  for (long long t = 0; t < trials && r.pass; ++t) {
    Params p(2);
    long long s = 0, l = 0;
    OnlinePolicy policy = random_two_phase(g, p, s, l);
    TwoPhaseState prev = *policy.two_phase();
    StepHook hook = [&](const OnlinePolicy& pol, long long bin, const Fill& f) {
      const TwoPhaseState& cur = *pol.two_phase();
      ++r.cases;
      if (auto bad = check_counter_invariants(cur)) {
        fail(r, *bad + " after bin " + std::to_string(bin));
        prev = cur;
        return;
      }
      const long long used = f.num_s + f.num_l;
      if (cur.count_s - prev.count_s != f.num_s ||
          cur.count_l - prev.count_l != f.num_l ||
          prev.inv.total() - cur.inv.total() != used) {
        fail(r, "item counters out of step with the fill at bin " + std::to_string(bin));
      }
      const long long dbins = (cur.s_bins - prev.s_bins) + (cur.l_bins - prev.l_bins) +
                              (cur.late_s_bins - prev.late_s_bins) +
                              (cur.late_l_bins - prev.late_l_bins);
      // exactly one choice counter moves on a balancing-phase choice bin,
      // none anywhere else
      const bool choice_size = (bin >= 2 * p.S && bin <= 3 * p.S - 2) ||
                               (bin >= 3 * p.S && bin <= p.M);
      const bool had_choice = choice_size && prev.inv.s_rem > 0 && prev.inv.l_rem > 0 &&
                              prev.inv.s_rem != 1 &&
                              !(prev.inv.s_rem == 2 && bin >= 3 * p.S);
      const long long want = had_choice && !phase1_done(prev) ? 1 : 0;
      if (dbins != want)
        fail(r, "choice counters moved by " + std::to_string(dbins) + " instead of " +
                    std::to_string(want) + " on a bin of size " + std::to_string(bin));
      prev = cur;
    };
    auto prefix = gen_bins(g, rnd(g, 0, 2 * (s + l) + 2), p, 50);
    run_game_drained(policy, prefix, hook);
  }
  return r;
}

PropertyReport prop_two_phase_deterministic(Rng g, long long trials) {
  PropertyReport r;
  r.name = "two_phase_deterministic";
  for (long long t = 0; t < trials; ++t) {
    Params p(2);
    long long s = 0, l = 0;
    OnlinePolicy policy = random_two_phase(g, p, s, l);
    auto prefix = gen_bins(g, rnd(g, 0, 2 * (s + l) + 2), p, 50);
    GameResult a = run_game_drained(policy, prefix);
    GameResult b = run_game_drained(OnlinePolicy(policy.spec(), p, s, l), prefix);
    ++r.cases;
    if (!(a.alg_trace == b.alg_trace) || a.alg_cost != b.alg_cost) {
      fail(r, "reruns diverged on sigma=" + show_bins(prefix));
      return r;
    }
  }
  return r;
}

PropertyReport prop_adaptive_opt_closed_forms(Rng g, long long trials) {
  PropertyReport r;
  r.name = "adaptive_opt_closed_forms";
  const char* ids[] = {"two-phase", "always-s", "always-l", "ratio:1/1", "ratio:2/1"};
  for (long long t = 0; t < trials; ++t) {
    const Params p(pick(g, {3LL, 10LL, 25LL}));
    const long long s = rnd(g, 4, 30);
    const long long l = rnd(g, 1, 30);
    OnlinePolicy policy(PolicySpec::parse(ids[rnd(g, 0, 4)]), p, s, l);
    AdaptiveGameResult res = run_game_adaptive(policy, false);
    long long expected = -1;
    if (res.regime == AdversaryRegime::ScarceLarge) {
      expected = res.branch == AdversaryBranch::PunishSmallLeftover
                     ? s * p.S + l * p.L
                     : 2 * l * p.S + s * p.S;
    } else if (res.branch == AdversaryBranch::PunishLargeLeftover) {
      expected = s * p.S + l * p.L + s / 2;
    } else if (res.k < s / 2) {
      expected = s * p.S + l * p.L;
    } else {
      ++r.skipped;
      continue;
    }
    ++r.cases;
    if (res.game.opt_cost != expected) {
      fail(r, "S=" + std::to_string(p.S) + " s=" + std::to_string(s) + " l=" +
                  std::to_string(l) + " k=" + std::to_string(res.k) + " opt=" +
                  std::to_string(res.game.opt_cost) + " expected=" +
                  std::to_string(expected));
      return r;
    }
  }
  return r;
}

PropertyReport prop_game_ratio_bounds(Rng g, long long trials) {
  PropertyReport r;
  r.name = "game_ratio_bounds";
  const char* ids[] = {"two-phase", "always-s", "always-l", "ratio:1/1", "ratio:2/1"};
  for (long long t = 0; t < trials; ++t) {
    const Params p(pick(g, {2LL, 3LL, 10LL}));
    long long s = rnd(g, 0, 12), l = rnd(g, 0, 12);
    if (s + l == 0) l = 1;
    OnlinePolicy policy(PolicySpec::parse(ids[rnd(g, 0, 4)]), p, s, l);
    GameResult res = rnd(g, 0, 1) == 0
                         ? run_game_adaptive(policy, rnd(g, 0, 1) == 1).game
                         : run_game_drained(policy, gen_bins(g, rnd(g, 0, 2 * (s + l)), p, 50));
    ++r.cases;
    if (res.ratio < Rational(1) || res.adjusted_ratio > res.ratio ||
        res.alg_cost < res.opt_cost) {
      fail(r, "ratio bounds violated: alg=" + std::to_string(res.alg_cost) + " opt=" +
                  std::to_string(res.opt_cost));
      return r;
    }
  }
  return r;
}

PropertyReport prop_two_phase_adjusted_below_bound(Rng g, long long trials) {
  PropertyReport r;
  r.name = "two_phase_adjusted_below_bound";
  for (long long t = 0; t < trials; ++t) {
    Params p(2);
    long long s = 0, l = 0;
    OnlinePolicy policy = random_two_phase(g, p, s, l);
    GameResult res;
    if (rnd(g, 0, 1) == 0) res = run_game_adaptive(policy, rnd(g, 0, 1) == 1).game;
    else res = run_game_drained(policy, gen_bins(g, rnd(g, 0, 2 * (s + l) + 2), p, 50));
    ++r.cases;
    if (res.adjusted_ratio > lower_bound_ratio(s, l)) {
      fail(r, "adjusted ratio " + res.adjusted_ratio.fraction_str() + " above bound " +
                  lower_bound_ratio(s, l).fraction_str() + " at S=" +
                  std::to_string(p.S) + " s=" + std::to_string(s) + " l=" +
                  std::to_string(l) + " sigma=" + show_bins(res.sigma));
      return r;
    }
  }
  return r;
}

}  // namespace

std::vector<PropertyReport> run_verification(unsigned long long seed, long long trials) {
  std::vector<PropertyReport> out;
  if (trials <= 0) return out;
  Rng base(seed);
  auto fork = [&] { return Rng(base()); };

  out.push_back(prop_thrifty_fill_sets());
  out.push_back(prop_reasonable_fill_sets());
  out.push_back(prop_predicate_chain(fork(), trials));
  out.push_back(prop_reasonable_pair_sync(fork(), trials));
  out.push_back(prop_dp_matches_bruteforce(fork(), trials));
  out.push_back(prop_opt_at_least_item_volume(fork(), trials));
  out.push_back(prop_opt_monotone_in_items(fork(), trials));
  out.push_back(prop_r_equals_opt_single_type(fork(), trials));
  for (int which = 0; which < 4; ++which)
    out.push_back(prop_r_vs_opt_bound(fork(), trials, which));
  out.push_back(prop_two_phase_trace_quality(fork(), trials));
  out.push_back(prop_two_phase_counter_relations(fork(), trials));
  out.push_back(prop_two_phase_deterministic(fork(), std::max(1LL, trials / 5)));
  out.push_back(prop_adaptive_opt_closed_forms(fork(), trials));
  out.push_back(prop_game_ratio_bounds(fork(), std::max(1LL, trials / 2)));
  out.push_back(prop_two_phase_adjusted_below_bound(fork(), std::max(1LL, trials / 2)));
  return out;
}

void write_report(std::span<const PropertyReport> report, std::ostream& out) {
  for (const PropertyReport& r : report) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    for (size_t i = r.name.size(); i < 36; ++i) out << ' ';
    out << " cases=" << r.cases << " skipped=" << r.skipped << '\n';
    if (!r.pass) out << "      counterexample: " << r.detail << '\n';
  }
  long long passed = 0;
  for (const PropertyReport& r : report) passed += r.pass ? 1 : 0;
  out << "verification: " << passed << "/" << report.size() << " properties passed\n";
}

bool all_pass(std::span<const PropertyReport> report) {
  for (const PropertyReport& r : report)
    if (!r.pass) return false;
  return true;
}

}  // namespace packlab
