#pragma once

#include "packlab/core.hpp"
#include "packlab/policies.hpp"
#include "packlab/rational.hpp"

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace packlab {

struct GameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Worst-case cost ratio any online policy can be forced to, as a function of
// the initial item counts. Exact rational; 1 when only one type is present.
Rational lower_bound_ratio(long long s, long long l);

// Static counterexample sequences for the single-rule policies.
//   1: l bins of 2S, s bins of S, l bins of M        (requires s = 2l)
//   2: l bins of 2S, s-1 bins of L, 1 bin of M       (requires s = 2l)
//   3: l bins of 2S, s bins of S, l/2 bins of M      (requires 2s = 3l)
//   4: l bins of 2S, s bins of S, l/3 bins of M      (requires 3s = 2l)
std::vector<long long> example_sequence(int id, long long s, long long l,
                                        const Params& p);

// The adaptive adversary opens with a batch of size-2S bins (either two small
// items or one large fit), watches how many the policy filled with small
// pairs, and then picks one of two continuations: exact-fit bins for the
// optimum that strand the policy's leftover small items one per large bin, or
// bins that force its leftover large items into max-size bins.
enum class AdversaryRegime { ScarceLarge, PlentyLarge };       // 2l <= s / 2l > s
enum class AdversaryBranch { PunishSmallLeftover, PunishLargeLeftover };

std::string_view to_string(AdversaryRegime r);
std::string_view to_string(AdversaryBranch b);

AdversaryRegime adversary_regime(long long s, long long l);
AdversaryBranch literal_branch(AdversaryRegime regime, long long s, long long l,
                               long long k);
std::vector<long long> adversary_first_batch(const Params& p, long long s, long long l);
std::vector<long long> adversary_continuation(AdversaryRegime regime,
                                              AdversaryBranch branch, const Params& p,
                                              long long s, long long l, long long k);

// Streaming form of the adversary: one bin per call, fed the policy's fill
// for the previous bin. Emits the first batch, then the literal-branch
// continuation, then max-size bins until the inventory is empty.
class AdaptiveAdversary {
 public:
  AdaptiveAdversary(const Params& p, long long s, long long l);

  std::optional<long long> next(const Fill& last_fill, const Inventory& inv);

  long long observed_k() const { return k_; }
  AdversaryRegime regime() const { return regime_; }
  std::optional<AdversaryBranch> branch() const { return branch_; }

 private:
  Params p_;
  long long s_ = 0;
  long long l_ = 0;
  long long k_ = 0;
  AdversaryRegime regime_;
  std::optional<AdversaryBranch> branch_;
  std::vector<long long> batch_;
  std::vector<long long> cont_;
  size_t bi_ = 0;
  size_t ci_ = 0;
  bool in_batch_ = true;
};

struct GameResult {
  Trace alg_trace;
  std::vector<long long> sigma;  // realized bins up to the last one used
  long long alg_cost = 0;
  long long opt_cost = 0;
  Rational ratio;
  Rational adjusted_ratio;  // (alg_cost - M) / opt_cost, clamped below at 0
};

struct AdaptiveGameResult {
  GameResult game;
  long long k = 0;
  AdversaryRegime regime = AdversaryRegime::ScarceLarge;
  AdversaryBranch branch = AdversaryBranch::PunishSmallLeftover;
  bool best_response = false;
};

// Called after every offered bin with the policy state already advanced.
using StepHook = std::function<void(const OnlinePolicy&, long long, const Fill&)>;

// Plays the scripted bins in order, skipping bins nothing fits into, and
// stops as soon as the policy holds no items. Throws GameError if the script
// runs out first. The optimal cost is computed on the realized sequence
// truncated to the last bin the policy used.
GameResult run_game(const OnlinePolicy& start, std::span<const long long> script,
                    const StepHook& hook = {});

// Same, but follows the script with max-size bins until the policy finishes.
GameResult run_game_drained(const OnlinePolicy& start,
                            std::span<const long long> prefix,
                            const StepHook& hook = {});

// Full adaptive game. In best-response mode both continuations are played
// against forked copies of the policy and the higher-ratio outcome is kept
// (ties keep the literal branch).
AdaptiveGameResult run_game_adaptive(const OnlinePolicy& start, bool best_response,
                                     const StepHook& hook = {});

}  // namespace packlab
