#pragma once

#include "packlab/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace packlab {

// Online policy selector. String ids: "two-phase", "always-s", "always-l",
// "ratio:<p>/<q>" (use a large item whenever q*l_bins <= p*s_bins).
struct PolicySpec {
  enum class Kind { TwoPhase, AlwaysS, AlwaysL, RatioLtoS };

  Kind kind = Kind::TwoPhase;
  long long ratio_num = 1;
  long long ratio_den = 1;

  static PolicySpec parse(std::string_view id);
  std::string id() const;

  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

// Mutable state of the two-phase policy. count_s/count_l tally every item
// used; s_bins/l_bins (and their late_* counterparts in the middle range)
// tally only bins where the policy chose between one large item and two or
// three small ones.
struct TwoPhaseState {
  Params params;
  long long s_init = 0;
  long long l_init = 0;
  Range range = Range::LowL;
  Inventory inv;
  long long count_s = 0;
  long long count_l = 0;
  long long s_bins = 0;
  long long l_bins = 0;
  long long late_s_bins = 0;
  long long late_l_bins = 0;

  TwoPhaseState(const Params& p, long long s, long long l);

  // Middle range only: once s_bins reaches this, further choices alternate
  // and are tallied in the late_* counters.
  long long late_threshold() const {
    return floor_div(s_init + 2 * l_init, 16);
  }
};

// Phase 1 ends once enough items of the range-designated type are used.
bool phase1_done(const TwoPhaseState& st);

// Whether the next choice bin should receive a large item. All comparisons
// are exact integer arithmetic; the middle-range target ratio
// (10l-3s)/(s+2l) is evaluated by cross-multiplication.
bool use_ls(const TwoPhaseState& st);

// One step of the two-phase policy. The caller only offers bins some
// remaining item fits into; bins below S are returned untouched as skips.
Fill two_phase_next(TwoPhaseState& st, long long bin_size);

// State for the single-rule policies. Choice-bin counters drive the ratio
// rule and are kept for all kinds.
struct BaselineState {
  PolicySpec spec;
  Params params;
  Inventory inv;
  long long s_bins = 0;
  long long l_bins = 0;

  BaselineState(const PolicySpec& ps, const Params& p, long long s, long long l);
};

// Same forced branches as the two-phase policy (one type left, [S,2S-2],
// exactly L, exactly L+S); on choice bins the policy's preference applies and
// the fill is topped up so the bin is never left wasteful.
Fill baseline_next(BaselineState& st, long long bin_size);

// Checks the counter relations that hold after every step of the two-phase
// policy. Returns a description of the first violated relation, or nullopt.
std::optional<std::string> check_counter_invariants(const TwoPhaseState& st);

// Uniform stepping interface over the policy kinds. Value type: copying
// forks the whole policy state.
class OnlinePolicy {
 public:
  OnlinePolicy(const PolicySpec& spec, const Params& p, long long s, long long l);

  Fill next(long long bin_size);

  const PolicySpec& spec() const { return spec_; }
  const Params& params() const;
  const Inventory& inventory() const;
  long long initial_s() const { return s0_; }
  long long initial_l() const { return l0_; }
  const TwoPhaseState* two_phase() const;

 private:
  PolicySpec spec_;
  long long s0_ = 0;
  long long l0_ = 0;
  std::variant<TwoPhaseState, BaselineState> st_;
};

}  // namespace packlab
