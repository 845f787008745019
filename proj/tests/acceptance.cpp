// Acceptance suite: six end-to-end checks, one line each, exit 0 only if all
// pass. Seeds are fixed so every run exercises identical instances.

#include "packlab/harness.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

using namespace packlab;

namespace {

using Clock = std::chrono::steady_clock;

std::string g_detail;
bool g_all_ok = true;

long long rnd(std::mt19937_64& g, long long lo, long long hi) {
  return lo + (long long)(g() % (unsigned long long)(hi - lo + 1));
}

void report(int idx, const char* name, bool ok, const std::string& info,
            double seconds) {
  std::printf("[%d/6] %s %-28s %s (%.1fs)\n", idx, ok ? "PASS" : "FAIL", name,
              info.c_str(), seconds);
  if (!ok && !g_detail.empty()) std::printf("      %s\n", g_detail.c_str());
  g_detail.clear();
  g_all_ok = g_all_ok && ok;
}

bool fail(const std::string& why) {
  if (g_detail.empty()) g_detail = why;
  return false;
}

// ---- criterion 1: dp optimum versus exhaustive search ----------------------

bool criterion_oracle_equivalence(std::string& info) {
  const auto t0 = Clock::now();
  std::mt19937_64 g(20250801);
  long long instances = 0;
  for (int i = 0; i < 1200; ++i) {
    const Params p(2 + i % 3);  // S in {2, 3, 4}
    const long long s = rnd(g, 0, 4), l = rnd(g, 0, 4);
    std::vector<long long> bins;
    for (long long n = rnd(g, 0, 8); n > 0; --n) bins.push_back(rnd(g, 1, p.M));
    auto dp = opt_cost(bins, s, l, p);
    auto bf = opt_bruteforce(bins, s, l, p);
    ++instances;
    if (dp != bf)
      return fail("dp and brute force disagree at S=" + std::to_string(p.S) +
                  " s=" + std::to_string(s) + " l=" + std::to_string(l));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  info = std::to_string(instances) + " instances";
  if (secs >= 60.0) return fail("runtime target of 60s exceeded");
  return true;
}

// ---- criterion 2: exact counterexample ratios ------------------------------

bool criterion_example_ratios(std::string& info) {
  int checked = 0;
  for (long long S : {10LL, 100LL, 1000LL}) {
    const Params p(S);
    struct Case {
      int id;
      long long s, l;
      const char* policy;
      Rational expect;
    };
    const long long l2 = 1;  // smallest item counts per sequence family
    const Case cases[] = {
        {1, 2, 1, "always-s", Rational(3, 2) - Rational(3, 4 * S)},
        {2, 2, 1, "always-l",
         Rational(3, 2) + Rational(1, 2 * l2) -
             (Rational(3, l2) + Rational(1)) / Rational(2 * (4 * S - 1))},
        {3, 3, 2, "ratio:1/1", Rational(1) + Rational(2, 7) - Rational(3, 7 * S)},
        {4, 2, 3, "ratio:2/1", Rational(5, 4) - Rational(3, 8 * S)},
    };
    for (const Case& c : cases) {
      OnlinePolicy policy(PolicySpec::parse(c.policy), p, c.s, c.l);
      GameResult res = run_game(policy, example_sequence(c.id, c.s, c.l, p));
      ++checked;
      if (res.ratio != c.expect)
        return fail("sequence " + std::to_string(c.id) + " at S=" + std::to_string(S) +
                    ": ratio " + res.ratio.fraction_str() + " expected " +
                    c.expect.fraction_str());
    }
  }
  info = std::to_string(checked) + " exact ratios";
  return true;
}

// ---- criterion 3: adversary forces the bound on the simple policies --------

bool criterion_lower_bound_convergence(std::string& info) {
  const std::pair<long long, long long> pairs[] = {
      {480, 120}, {400, 200}, {330, 275}, {240, 360}};
  const char* policies[] = {"always-s", "always-l", "ratio:1/1", "ratio:2/1"};
  int cells = 0;
  for (auto [s, l] : pairs) {
    const Rational bound = lower_bound_ratio(s, l);
    for (const char* id : policies) {
      Rational deficit[3];
      int i = 0;
      for (long long S : {10LL, 100LL, 1000LL}) {
        const Params p(S);
        OnlinePolicy policy(PolicySpec::parse(id), p, s, l);
        AdaptiveGameResult res = run_game_adaptive(policy, false);
        if (res.game.ratio < bound - Rational(5, S))
          return fail(std::string(id) + " at (" + std::to_string(s) + "," +
                      std::to_string(l) + "), S=" + std::to_string(S) + ": ratio " +
                      res.game.ratio.fraction_str() + " below " +
                      bound.fraction_str() + " - 5/S");
        deficit[i++] = bound - res.game.ratio;
      }
      if (deficit[0] < deficit[1] || deficit[1] < deficit[2])
        return fail(std::string(id) + " at (" + std::to_string(s) + "," +
                    std::to_string(l) + "): deficit not shrinking in S");
      ++cells;
    }
  }
  info = std::to_string(cells) + " policy/mix cells, S in {10,100,1000}";
  return true;
}

// ---- criterion 4: two-phase policy never beats the bound by more than M ----

struct StepStats {
  long long steps = 0;
  long long counter_failures = 0;
  std::string first_counter_failure;
  long long sync_bins = 0;
  long long sync_failures = 0;
  std::string first_sync_failure;
  long long games = 0;
};

StepHook counter_hook(StepStats& st) {
  return [&st](const OnlinePolicy& pol, long long bin, const Fill&) {
    const TwoPhaseState* tp = pol.two_phase();
    if (!tp) return;
    ++st.steps;
    if (auto bad = check_counter_invariants(*tp)) {
      if (st.counter_failures++ == 0)
        st.first_counter_failure = *bad + " at bin " + std::to_string(bin);
    }
  };
}

// Walks the policy trace against the costliest balanced witness on the same
// bins and checks the weighted remainder s_rem + 2*l_rem stays equal while
// both packings hold both item types and keep to the canonical fills.
void check_pair_sync(const GameResult& g, StepStats& st) {
  const Params& p = g.alg_trace.params;
  const long long s = g.alg_trace.initial_s, l = g.alg_trace.initial_l;
  if (s == 0 || l == 0) return;
  auto wit = max_reasonable_trace(g.sigma, s, l, p);
  if (!wit) {
    if (st.sync_failures++ == 0)
      st.first_sync_failure = "no balanced witness although the policy packed everything";
    return;
  }
  Inventory a{s, l}, b{s, l};
  for (size_t i = 0; i < g.sigma.size(); ++i) {
    if (a.s_rem == 0 || a.l_rem == 0 || b.s_rem == 0 || b.l_rem == 0) break;
    const Fill& fa = g.alg_trace.entries[i].fill;
    const Fill& fb = wit->entries[i].fill;
    const long long bin = g.sigma[i];
    if (bin >= p.S) {
      bool ca = false, cb = false;
      for_each_reasonable_fill(bin, p, [&](const Fill& f) {
        ca = ca || f == fa;
        cb = cb || f == fb;
      });
      if (!ca || !cb) break;  // one of the balancing fronts is over
    }
    a.s_rem -= fa.num_s;
    a.l_rem -= fa.num_l;
    b.s_rem -= fb.num_s;
    b.l_rem -= fb.num_l;
    ++st.sync_bins;
    if (a.s_rem + 2 * a.l_rem != b.s_rem + 2 * b.l_rem) {
      if (st.sync_failures++ == 0)
        st.first_sync_failure = "weighted remainders diverged at bin index " +
                                std::to_string(i);
      break;
    }
  }
}

bool criterion_matching_upper_bound(std::string& info, StepStats& stats) {
  std::mt19937_64 g(20250804);
  const StepHook hook = counter_hook(stats);
  const PolicySpec two_phase = PolicySpec::parse("two-phase");

  const std::pair<long long, long long> big[] = {
      {150, 50}, {160, 40}, {120, 30}, {120, 80}, {90, 75},  {110, 88},
      {100, 100}, {40, 160}, {50, 150}, {66, 132}, {20, 100}, {80, 120}};
  for (int i = 0; i < 10200; ++i) {
    const Params p(i % 2 == 0 ? 10 : 100);
    long long s, l;
    if (i % 25 == 24) {
      const auto& c = big[(i / 25) % 12];
      s = c.first;
      l = c.second;
    } else {
      s = rnd(g, 0, 24);
      l = rnd(g, 0, 24);
      if (s + l == 0) s = 3;
    }
    std::vector<long long> prefix;
    for (long long n = rnd(g, 0, 2 * (s + l) + 4); n > 0; --n)
      prefix.push_back(rnd(g, 1, p.M));
    GameResult res = run_game_drained(OnlinePolicy(two_phase, p, s, l), prefix, hook);
    ++stats.games;
    if (res.adjusted_ratio > lower_bound_ratio(s, l))
      return fail("random game at S=" + std::to_string(p.S) + " s=" +
                  std::to_string(s) + " l=" + std::to_string(l) +
                  ": adjusted ratio " + res.adjusted_ratio.fraction_str() +
                  " above " + lower_bound_ratio(s, l).fraction_str());
    check_pair_sync(res, stats);
  }

  const std::pair<long long, long long> cells[] = {
      {8, 2},   {40, 10}, {160, 40}, {100, 50}, {6, 4},   {24, 16},
      {120, 80}, {66, 55}, {2, 3},    {30, 45},  {80, 120}, {4, 2}};
  for (long long S : {10LL, 100LL}) {
    const Params p(S);
    for (auto [s, l] : cells) {
      for (bool best : {false, true}) {
        AdaptiveGameResult res =
            run_game_adaptive(OnlinePolicy(two_phase, p, s, l), best, hook);
        ++stats.games;
        if (res.game.adjusted_ratio > lower_bound_ratio(s, l))
          return fail("adaptive game at S=" + std::to_string(S) + " s=" +
                      std::to_string(s) + " l=" + std::to_string(l) +
                      ": adjusted ratio above the bound");
        check_pair_sync(res.game, stats);
      }
    }
  }
  info = std::to_string(stats.games) + " games, " + std::to_string(stats.steps) +
         " steps";
  return true;
}

// ---- criterion 5: structural inequality suites ------------------------------

bool criterion_structural_suites(std::string& info, const StepStats& stats) {
  auto rep = run_verification(20250805, 1000);
  std::vector<std::string> problems;
  const char* required[] = {"r_le_opt_small_equivalent", "r_le_opt_large_equivalent",
                            "r_small_only_vs_opt_mixed", "r_large_only_vs_opt_mixed"};
  for (const char* name : required) {
    bool found = false;
    for (const PropertyReport& r : rep) {
      if (r.name != name) continue;
      found = true;
      if (!r.pass)
        problems.push_back(r.name + ": " + r.detail);
      else if (r.cases < 1000)
        problems.push_back(r.name + " gathered only " + std::to_string(r.cases) +
                           " feasible instances");
    }
    if (!found) problems.push_back("missing property " + std::string(name));
  }
  for (const PropertyReport& r : rep) {
    bool is_required = false;
    for (const char* name : required) is_required = is_required || r.name == name;
    if (!is_required && !r.pass) problems.push_back(r.name + ": " + r.detail);
  }
  if (stats.steps == 0) problems.push_back("no two-phase steps were observed");
  if (stats.counter_failures > 0)
    problems.push_back("counter relations failed " +
                       std::to_string(stats.counter_failures) + " times: " +
                       stats.first_counter_failure);
  if (stats.sync_bins == 0) problems.push_back("no paired-packing bins were compared");
  if (stats.sync_failures > 0)
    problems.push_back("paired packings diverged " + std::to_string(stats.sync_failures) +
                       " times: " + stats.first_sync_failure);
  info = std::to_string(rep.size()) + " property suites, " +
         std::to_string(stats.steps) + " stepwise checks, " +
         std::to_string(stats.sync_bins) + " paired bins";
  if (!problems.empty()) {
    std::string all = problems[0];
    for (size_t i = 1; i < problems.size(); ++i) all += "; " + problems[i];
    return fail(all);
  }
  return true;
}

// ---- criterion 6: ratio curve -----------------------------------------------

bool criterion_ratio_curve(std::string& info) {
  const auto t0 = Clock::now();
  StepStats stats;
  auto rows = ratio_curve(1000, Rational(1, 10), Rational(2), 600, counter_hook(stats));
  if (rows.size() != 20)
    return fail("expected 20 grid points, got " + std::to_string(rows.size()));
  for (int k = 1; k <= 20; ++k) {
    const CurveRow& row = rows[(size_t)k - 1];
    const long long s = 600, l = 60 * k;
    if (row.x != Rational(k, 10)) return fail("grid point out of place");
    // the advertised piecewise bound, written out directly
    Rational expect(0);
    if (2 * l <= s)
      expect = Rational(1) + Rational(1) / (Rational(2) + Rational(s, l));
    else if (6 * l <= 5 * s)
      expect = Rational(5, 4);
    else
      expect = Rational(1) + Rational(2) / (Rational(3) + Rational(6 * l, s));
    if (row.bound != expect)
      return fail("bound column mismatch at l/s=" + row.x.fraction_str() + ": " +
                  row.bound.fraction_str() + " expected " + expect.fraction_str());
    if (row.adjusted > row.bound)
      return fail("measured ratio above the bound at l/s=" + row.x.fraction_str());
    if (row.adjusted < row.bound - Rational(1, 50))
      return fail("measured ratio more than 0.02 below the bound at l/s=" +
                  row.x.fraction_str() + ": " + row.adjusted.decimal_str(6) + " vs " +
                  row.bound.decimal_str(6));
  }
  if (stats.counter_failures > 0) return fail("counter relations failed on the curve");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  info = "20 grid points at S=1000";
  if (secs >= 300.0) return fail("runtime target of 5 minutes exceeded");
  return true;
}

}  // namespace

int main() {
  StepStats stats4;
  {
    const auto t0 = Clock::now();
    std::string info;
    bool ok = criterion_oracle_equivalence(info);
    report(1, "oracle equivalence", ok, info,
           std::chrono::duration<double>(Clock::now() - t0).count());
  }
  {
    const auto t0 = Clock::now();
    std::string info;
    bool ok = criterion_example_ratios(info);
    report(2, "counterexample ratios", ok, info,
           std::chrono::duration<double>(Clock::now() - t0).count());
  }
  {
    const auto t0 = Clock::now();
    std::string info;
    bool ok = criterion_lower_bound_convergence(info);
    report(3, "lower-bound convergence", ok, info,
           std::chrono::duration<double>(Clock::now() - t0).count());
  }
  {
    const auto t0 = Clock::now();
    std::string info;
    bool ok = criterion_matching_upper_bound(info, stats4);
    report(4, "matching upper bound", ok, info,
           std::chrono::duration<double>(Clock::now() - t0).count());
  }
  {
    const auto t0 = Clock::now();
    std::string info;
    bool ok = criterion_structural_suites(info, stats4);
    report(5, "structural inequality suites", ok, info,
           std::chrono::duration<double>(Clock::now() - t0).count());
  }
  {
    const auto t0 = Clock::now();
    std::string info;
    bool ok = criterion_ratio_curve(info);
    report(6, "ratio curve reproduction", ok, info,
           std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return g_all_ok ? 0 : 1;
}
