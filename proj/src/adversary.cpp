#include "packlab/adversary.hpp"

#include "packlab/oracle.hpp"

namespace packlab {

Rational lower_bound_ratio(long long s, long long l) {
  if (s < 0 || l < 0 || s + l < 1)
    throw std::invalid_argument("need at least one item");
  switch (classify_range(s, l)) {
    case Range::LowL: return Rational(3 * l + s, 2 * l + s);
    case Range::MidL: return Rational(5, 4);
    case Range::HighL: return Rational(5 * s + 6 * l, 3 * s + 6 * l);
  }
  return Rational(1);
}

std::vector<long long> example_sequence(int id, long long s, long long l,
                                        const Params& p) {
  if (s < 0 || l < 1) throw std::invalid_argument("example needs l >= 1");
  std::vector<long long> bins;
  auto emit = [&](long long count, long long size) {
    for (long long i = 0; i < count; ++i) bins.push_back(size);
  };
  switch (id) {
    case 1:
      if (s != 2 * l) throw std::invalid_argument("example 1 requires s = 2l");
      emit(l, 2 * p.S);
      emit(s, p.S);
      emit(l, p.M);
      break;
    case 2:
      if (s != 2 * l) throw std::invalid_argument("example 2 requires s = 2l");
      emit(l, 2 * p.S);
      emit(s - 1, p.L);
      emit(1, p.M);
      break;
    case 3:
      if (2 * s != 3 * l || l % 2 != 0)
        throw std::invalid_argument("example 3 requires 2s = 3l with l even");
      emit(l, 2 * p.S);
      emit(s, p.S);
      emit(l / 2, p.M);
      break;
    case 4:
      if (3 * s != 2 * l || l % 3 != 0)
        throw std::invalid_argument("example 4 requires 3s = 2l with l divisible by 3");
      emit(l, 2 * p.S);
      emit(s, p.S);
      emit(l / 3, p.M);
      break;
    default:
      throw std::invalid_argument("example id must be 1..4");
  }
  return bins;
}

std::string_view to_string(AdversaryRegime r) {
  return r == AdversaryRegime::ScarceLarge ? "scarce-large" : "plenty-large";
}

std::string_view to_string(AdversaryBranch b) {
  return b == AdversaryBranch::PunishSmallLeftover ? "punish-small-leftover"
                                                   : "punish-large-leftover";
}

AdversaryRegime adversary_regime(long long s, long long l) {
  return 2 * l <= s ? AdversaryRegime::ScarceLarge : AdversaryRegime::PlentyLarge;
}

AdversaryBranch literal_branch(AdversaryRegime regime, long long s, long long l,
                               long long k) {
  if (regime == AdversaryRegime::ScarceLarge)
    return 2 * k <= l ? AdversaryBranch::PunishSmallLeftover
                      : AdversaryBranch::PunishLargeLeftover;
  // Thresholds k <= s/2 - s/8 - l/4 + 1 and k <= s/2 - s/3 + 1, compared
  // exactly by clearing denominators.
  const long long half = s / 2;
  if (8 * k <= 8 * half - s - 2 * l + 8) return AdversaryBranch::PunishSmallLeftover;
  if (3 * k <= 3 * half - s + 3) return AdversaryBranch::PunishSmallLeftover;
  return AdversaryBranch::PunishLargeLeftover;
}

std::vector<long long> adversary_first_batch(const Params& p, long long s, long long l) {
  if (s == 0 || l == 0) return {};
  const long long count = 2 * l <= s ? l : s / 2;
  return std::vector<long long>((size_t)count, 2 * p.S);
}

std::vector<long long> adversary_continuation(AdversaryRegime regime,
                                              AdversaryBranch branch, const Params& p,
                                              long long s, long long l, long long k) {
  std::vector<long long> bins;
  auto emit = [&](long long count, long long size) {
    for (long long i = 0; i < count; ++i) bins.push_back(size);
  };
  if (regime == AdversaryRegime::ScarceLarge) {
    if (branch == AdversaryBranch::PunishSmallLeftover) {
      emit(s - 2 * l, p.S);
      emit(2 * l, p.L);
    } else {
      emit(s, p.S);
      emit(l, p.M);
    }
    return bins;
  }
  const long long half = s / 2;
  if (branch == AdversaryBranch::PunishSmallLeftover) {
    emit(s - 2 * half, p.S);  // one odd small item, if any
    emit(half - k + l - 1, p.L);
    emit(1, p.M);
  } else {
    emit(std::max(s - 2 * k, s - l + half), p.S);
    emit(std::min(2 * k, l - half), p.L + p.S);
    emit(std::max(l - half - 2 * k, 0LL), p.L);
    emit(k, p.M);
  }
  return bins;
}

AdaptiveAdversary::AdaptiveAdversary(const Params& p, long long s, long long l)
    : p_(p), s_(s), l_(l), regime_(adversary_regime(s, l)),
      batch_(adversary_first_batch(p, s, l)) {}

std::optional<long long> AdaptiveAdversary::next(const Fill& last_fill,
                                                 const Inventory& inv) {
  if (in_batch_) {
    if (bi_ > 0) k_ += last_fill.num_s == 2 ? 1 : 0;
    if (bi_ < batch_.size()) return batch_[bi_++];
    in_batch_ = false;
    branch_ = literal_branch(regime_, s_, l_, k_);
    // with only one item type there is nothing to set up, drain directly
    if (s_ > 0 && l_ > 0)
      cont_ = adversary_continuation(regime_, *branch_, p_, s_, l_, k_);
  }
  if (inv.empty()) return std::nullopt;
  if (ci_ < cont_.size()) return cont_[ci_++];
  return p_.M;  // drain
}

namespace {

// Steps one policy through offered bins and records the trace.
struct Driver {
  OnlinePolicy policy;
  std::vector<TraceEntry> entries;
  long long offers = 0;

  explicit Driver(OnlinePolicy p) : policy(std::move(p)) {}

  bool done() const { return policy.inventory().empty(); }

  Fill offer(long long bin, const StepHook& hook) {
    const Params& p = policy.params();
    if (bin < 1 || bin > p.M) throw std::invalid_argument("bin size outside [1, M]");
    ++offers;
    const Inventory& inv = policy.inventory();
    Fill f;
    const bool fits = (inv.s_rem > 0 && bin >= p.S) || (inv.l_rem > 0 && bin >= p.L);
    if (fits) f = policy.next(bin);
    entries.push_back({bin, f});
    if (hook) hook(policy, bin, f);
    return f;
  }

  long long guard_limit(long long scripted) const {
    return 16 * (policy.initial_s() + policy.initial_l()) + scripted;
  }

  GameResult finish() const {
    if (!done()) throw GameError("game finished with items still unpacked");
    size_t end = entries.size();
    while (end > 0 && entries[end - 1].fill.empty()) --end;
    const Params& p = policy.params();
    GameResult r;
    r.alg_trace =
        Trace{p, policy.initial_s(), policy.initial_l(),
              std::vector<TraceEntry>(entries.begin(), entries.begin() + (long)end)};
    r.sigma.reserve(end);
    for (size_t i = 0; i < end; ++i) r.sigma.push_back(entries[i].bin_size);
    r.alg_cost = trace_cost(r.alg_trace);
    auto opt = opt_cost(r.sigma, policy.initial_s(), policy.initial_l(), p);
    if (!opt) throw GameError("oracle reports the realized sequence infeasible");
    r.opt_cost = *opt;
    if (r.alg_cost < r.opt_cost)
      throw GameError("online cost fell below the offline optimum");
    r.ratio = Rational(r.alg_cost, r.opt_cost);
    r.adjusted_ratio =
        r.alg_cost > p.M ? Rational(r.alg_cost - p.M, r.opt_cost) : Rational(0);
    return r;
  }
};

void drain(Driver& d, long long scripted, const StepHook& hook) {
  const long long limit = d.guard_limit(scripted);
  while (!d.done()) {
    if (d.offers >= limit) throw GameError("non-termination guard tripped");
    d.offer(d.policy.params().M, hook);
  }
}

}  // namespace

GameResult run_game(const OnlinePolicy& start, std::span<const long long> script,
                    const StepHook& hook) {
  if (start.initial_s() + start.initial_l() < 1) throw GameError("no items to pack");
  Driver d(start);
  for (long long bin : script) {
    if (d.done()) break;
    d.offer(bin, hook);
  }
  return d.finish();
}

GameResult run_game_drained(const OnlinePolicy& start,
                            std::span<const long long> prefix, const StepHook& hook) {
  if (start.initial_s() + start.initial_l() < 1) throw GameError("no items to pack");
  Driver d(start);
  for (long long bin : prefix) {
    if (d.done()) break;
    d.offer(bin, hook);
  }
  drain(d, (long long)prefix.size(), hook);
  return d.finish();
}

AdaptiveGameResult run_game_adaptive(const OnlinePolicy& start, bool best_response,
                                     const StepHook& hook) {
  const long long s0 = start.initial_s();
  const long long l0 = start.initial_l();
  if (s0 + l0 < 1) throw GameError("no items to pack");
  const Params p = start.params();

  AdaptiveGameResult out;
  out.regime = adversary_regime(s0, l0);
  out.best_response = best_response;

  Driver d(start);
  if (s0 == 0 || l0 == 0) {
    // no opening batch: nothing to observe, straight to the drain
    out.branch = literal_branch(out.regime, s0, l0, 0);
    drain(d, 0, hook);
    out.game = d.finish();
    return out;
  }
  long long k = 0;
  for (long long bin : adversary_first_batch(p, s0, l0)) {
    if (d.done()) break;
    k += d.offer(bin, hook).num_s == 2 ? 1 : 0;
  }
  out.k = k;

  const AdversaryBranch literal = literal_branch(out.regime, s0, l0, k);
  std::vector<AdversaryBranch> branches{literal};
  if (best_response) {
    const AdversaryBranch other = literal == AdversaryBranch::PunishSmallLeftover
                                      ? AdversaryBranch::PunishLargeLeftover
                                      : AdversaryBranch::PunishSmallLeftover;
    branches.push_back(other);
  }

  bool have = false;
  for (AdversaryBranch branch : branches) {
    Driver fork = d;
    auto cont = adversary_continuation(out.regime, branch, p, s0, l0, k);
    for (long long bin : cont) {
      if (fork.done()) break;
      fork.offer(bin, hook);
    }
    drain(fork, (long long)cont.size() + k, hook);
    GameResult g = fork.finish();
    if (!have || g.ratio > out.game.ratio) {
      out.game = std::move(g);
      out.branch = branch;
      have = true;
    }
  }
  return out;
}

}  // namespace packlab
