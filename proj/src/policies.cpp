#include "packlab/policies.hpp"

#include <charconv>

namespace packlab {

namespace {

long long parse_ll(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer in policy id: " + std::string(s));
  return v;
}

}  // namespace

PolicySpec PolicySpec::parse(std::string_view id) {
  if (id == "two-phase") return {Kind::TwoPhase, 1, 1};
  if (id == "always-s") return {Kind::AlwaysS, 1, 1};
  if (id == "always-l") return {Kind::AlwaysL, 1, 1};
  if (id.starts_with("ratio:")) {
    std::string_view rest = id.substr(6);
    size_t slash = rest.find('/');
    if (slash == std::string_view::npos)
      throw std::invalid_argument("ratio policy must look like ratio:<p>/<q>");
    PolicySpec ps{Kind::RatioLtoS, parse_ll(rest.substr(0, slash)),
                  parse_ll(rest.substr(slash + 1))};
    if (ps.ratio_den < 1 || ps.ratio_num < 0)
      throw std::invalid_argument("ratio policy needs p >= 0 and q >= 1");
    return ps;
  }
  throw std::invalid_argument("unknown policy id: " + std::string(id));
}

std::string PolicySpec::id() const {
  switch (kind) {
    case Kind::TwoPhase: return "two-phase";
    case Kind::AlwaysS: return "always-s";
    case Kind::AlwaysL: return "always-l";
    case Kind::RatioLtoS:
      return "ratio:" + std::to_string(ratio_num) + "/" + std::to_string(ratio_den);
  }
  return "?";
}

TwoPhaseState::TwoPhaseState(const Params& p, long long s, long long l)
    : params(p), s_init(s), l_init(l), range(classify_range(s, l)), inv{s, l} {
  if (s < 0 || l < 0) throw std::invalid_argument("negative item count");
}

bool phase1_done(const TwoPhaseState& st) {
  switch (st.range) {
    case Range::LowL: return st.count_l >= st.l_init / 2;
    case Range::MidL:
      return st.count_s >= floor_div(3 * st.s_init - 2 * st.l_init, 4);
    case Range::HighL: return st.count_s >= st.s_init / 3;
  }
  return true;
}

bool use_ls(const TwoPhaseState& st) {
  switch (st.range) {
    case Range::LowL: return st.l_bins <= st.s_bins;
    case Range::MidL:
      if (st.s_bins < st.late_threshold())
        return (st.s_init + 2 * st.l_init) * st.l_bins <=
               (10 * st.l_init - 3 * st.s_init) * st.s_bins;
      return st.late_l_bins <= st.late_s_bins;
    case Range::HighL: return st.l_bins <= 2 * st.s_bins;
  }
  return false;
}

Fill two_phase_next(TwoPhaseState& st, long long bin) {
  const Params& p = st.params;
  if (bin < 1 || bin > p.M) throw std::invalid_argument("bin size outside [1, M]");
  if (st.inv.empty()) throw std::logic_error("two_phase_next: no items remain");

  auto use = [&](long long a, long long b) {
    st.inv.s_rem -= a;
    st.inv.l_rem -= b;
    st.count_s += a;
    st.count_l += b;
    return Fill{a, b};
  };

  // Only one item type left: pack as many as fit. Within the size system a
  // bin never holds more than one large item.
  if (st.inv.l_rem == 0) return use(std::min(bin / p.S, st.inv.s_rem), 0);
  if (st.inv.s_rem == 0) return use(0, std::min(bin / p.L, st.inv.l_rem));

  if (bin < p.S) return Fill{};  // nothing fits, forced skip
  if (bin <= 2 * p.S - 2) return use(1, 0);
  if (bin == p.L) return use(0, 1);
  if (bin == p.L + p.S) return use(1, 1);

  // Sizes [2S, 3S-2] and [3S, 4S-3] remain: two or three small items fit, or
  // one large item (plus a small one in the upper band).
  const bool large_bin = bin >= 3 * p.S;
  if (st.inv.s_rem == 1) return large_bin ? use(1, 1) : use(0, 1);
  if (st.inv.s_rem == 2 && large_bin) return use(1, 1);

  if (!phase1_done(st)) {
    const bool pick_large = use_ls(st);
    Fill f = pick_large ? (large_bin ? use(1, 1) : use(0, 1))
                        : (large_bin ? use(3, 0) : use(2, 0));
    if (st.range == Range::MidL && st.s_bins >= st.late_threshold())
      ++(pick_large ? st.late_l_bins : st.late_s_bins);
    else
      ++(pick_large ? st.l_bins : st.s_bins);
    return f;
  }

  // Phase 2: spend the type the opening mix says will be in excess.
  if (st.range == Range::LowL) return use(std::min(bin / p.S, st.inv.s_rem), 0);
  return use(bin - p.L >= p.S ? 1 : 0, 1);
}

BaselineState::BaselineState(const PolicySpec& ps, const Params& p, long long s,
                             long long l)
    : spec(ps), params(p), inv{s, l} {
  if (s < 0 || l < 0) throw std::invalid_argument("negative item count");
}

Fill baseline_next(BaselineState& st, long long bin) {
  const Params& p = st.params;
  if (bin < 1 || bin > p.M) throw std::invalid_argument("bin size outside [1, M]");
  if (st.inv.empty()) throw std::logic_error("baseline_next: no items remain");

  auto use = [&](long long a, long long b) {
    st.inv.s_rem -= a;
    st.inv.l_rem -= b;
    return Fill{a, b};
  };

  if (st.inv.l_rem == 0) return use(std::min(bin / p.S, st.inv.s_rem), 0);
  if (st.inv.s_rem == 0) return use(0, std::min(bin / p.L, st.inv.l_rem));
  if (bin < p.S) return Fill{};
  if (bin <= 2 * p.S - 2) return use(1, 0);
  if (bin == p.L) return use(0, 1);
  if (bin == p.L + p.S) return use(1, 1);

  bool pick_large = false;
  switch (st.spec.kind) {
    case PolicySpec::Kind::AlwaysS: pick_large = false; break;
    case PolicySpec::Kind::AlwaysL: pick_large = true; break;
    case PolicySpec::Kind::RatioLtoS:
      pick_large = st.spec.ratio_den * st.l_bins <= st.spec.ratio_num * st.s_bins;
      break;
    case PolicySpec::Kind::TwoPhase:
      throw std::logic_error("two-phase policy routed to baseline_next");
  }
  ++(pick_large ? st.l_bins : st.s_bins);

  if (pick_large) {
    // top up with a small item when the large one leaves room for it
    return use(bin - p.L >= p.S && st.inv.s_rem >= 1 ? 1 : 0, 1);
  }
  const long long a = std::min(bin / p.S, st.inv.s_rem);
  const long long b = bin - a * p.S >= p.L && st.inv.l_rem >= 1 ? 1 : 0;
  return use(a, b);
}

std::optional<std::string> check_counter_invariants(const TwoPhaseState& st) {
  auto fail = [](const std::string& what) { return std::optional<std::string>(what); };
  auto num = [](long long v) { return std::to_string(v); };

  if (st.l_bins + st.late_l_bins > st.count_l)
    return fail("l_bins+late_l_bins=" + num(st.l_bins + st.late_l_bins) +
                " exceeds count_l=" + num(st.count_l));
  if (2 * (st.s_bins + st.late_s_bins) > st.count_s)
    return fail("2*(s_bins+late_s_bins)=" + num(2 * (st.s_bins + st.late_s_bins)) +
                " exceeds count_s=" + num(st.count_s));
  if (st.range != Range::MidL && (st.late_s_bins != 0 || st.late_l_bins != 0))
    return fail("late counters moved outside the middle range");

  switch (st.range) {
    case Range::LowL:
      if (st.l_bins < st.s_bins || st.l_bins > st.s_bins + 1)
        return fail("LowL: l_bins=" + num(st.l_bins) + " outside [s_bins, s_bins+1], s_bins=" +
                    num(st.s_bins));
      break;
    case Range::MidL: {
      if (st.late_l_bins < st.late_s_bins || st.late_l_bins > st.late_s_bins + 1)
        return fail("MidL: late_l_bins=" + num(st.late_l_bins) +
                    " outside [late_s_bins, late_s_bins+1], late_s_bins=" +
                    num(st.late_s_bins));
      const long long cn = 10 * st.l_init - 3 * st.s_init;
      const long long cd = st.s_init + 2 * st.l_init;
      const long long lo = floor_div(cn * (st.s_bins - 1), cd) + 1;
      const long long hi = floor_div(cn * st.s_bins, cd) + 1;
      if (st.l_bins < lo || st.l_bins > hi)
        return fail("MidL: l_bins=" + num(st.l_bins) + " outside [" + num(lo) + ", " +
                    num(hi) + "], s_bins=" + num(st.s_bins));
      if (8 * (st.s_bins + st.late_s_bins) > 3 * st.s_init - 2 * st.l_init + 8)
        return fail("MidL: 8*(s_bins+late_s_bins)=" +
                    num(8 * (st.s_bins + st.late_s_bins)) + " exceeds 3s-2l+8=" +
                    num(3 * st.s_init - 2 * st.l_init + 8));
      break;
    }
    case Range::HighL:
      // The greedy choice rule keeps l_bins within one of twice s_bins on
      // both sides (the lower bound dips one below right after a small
      // choice; the upper bound is tight).
      if (st.l_bins < 2 * st.s_bins - 1 || st.l_bins > 2 * st.s_bins + 1)
        return fail("HighL: l_bins=" + num(st.l_bins) +
                    " outside [2*s_bins-1, 2*s_bins+1], s_bins=" + num(st.s_bins));
      if (6 * st.s_bins > st.s_init + 6)
        return fail("HighL: 6*s_bins=" + num(6 * st.s_bins) + " exceeds s+6=" +
                    num(st.s_init + 6));
      break;
  }
  return std::nullopt;
}

OnlinePolicy::OnlinePolicy(const PolicySpec& spec, const Params& p, long long s,
                           long long l)
    : spec_(spec),
      s0_(s),
      l0_(l),
      st_(spec.kind == PolicySpec::Kind::TwoPhase
              ? std::variant<TwoPhaseState, BaselineState>(TwoPhaseState(p, s, l))
              : std::variant<TwoPhaseState, BaselineState>(
                    BaselineState(spec, p, s, l))) {}

Fill OnlinePolicy::next(long long bin_size) {
  if (auto* t = std::get_if<TwoPhaseState>(&st_)) return two_phase_next(*t, bin_size);
  return baseline_next(std::get<BaselineState>(st_), bin_size);
}

const Params& OnlinePolicy::params() const {
  if (auto* t = std::get_if<TwoPhaseState>(&st_)) return t->params;
  return std::get<BaselineState>(st_).params;
}

const Inventory& OnlinePolicy::inventory() const {
  if (auto* t = std::get_if<TwoPhaseState>(&st_)) return t->inv;
  return std::get<BaselineState>(st_).inv;
}

const TwoPhaseState* OnlinePolicy::two_phase() const {
  return std::get_if<TwoPhaseState>(&st_);
}

}  // namespace packlab
