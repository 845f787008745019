#include "packlab/oracle.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace packlab {

namespace {

enum class Mode { MinValid, MaxReasonable };

template <typename Fn>
void for_each_move(Mode mode, long long bin, long long s, long long l,
                   const Params& p, Fn&& fn) {
  if (mode == Mode::MaxReasonable && s >= 3 && l >= 1) {
    // Balancing front still active: only the canonical fills are allowed,
    // and bins too small for any item are skipped.
    if (bin < p.S) {
      fn(Fill{});
      return;
    }
    for_each_reasonable_fill(bin, p, fn);
    return;
  }
  for_each_thrifty_fill(bin, s, l, p, fn);
}

void validate_instance(std::span<const long long> sigma, long long s, long long l,
                       const Params& p) {
  if (s < 0 || l < 0) throw std::invalid_argument("negative item count");
  if ((long long)sigma.size() > kMaxSequenceLen)
    throw std::invalid_argument("bin sequence too long");
  for (long long bin : sigma)
    if (bin < 1 || bin > p.M) throw std::invalid_argument("bin size outside [1, M]");
}

// One DP layer over (s_rem, l_rem) states, stored sparsely: a stamped dense
// array plus the list of live cells.
struct Layer {
  std::vector<long long> val;
  std::vector<unsigned> stamp;
  std::vector<long long> act;
  unsigned epoch = 0;

  explicit Layer(size_t cells) : val(cells, 0), stamp(cells, 0) {}

  void clear() {
    ++epoch;
    act.clear();
  }
  bool has(long long k) const { return stamp[(size_t)k] == epoch; }
  long long get(long long k) const { return val[(size_t)k]; }
  void relax(long long k, long long c, bool maximize) {
    if (stamp[(size_t)k] != epoch) {
      stamp[(size_t)k] = epoch;
      val[(size_t)k] = c;
      act.push_back(k);
    } else if (maximize ? c > val[(size_t)k] : c < val[(size_t)k]) {
      val[(size_t)k] = c;
    }
  }
};

std::optional<long long> solve_cost(Mode mode, std::span<const long long> sigma,
                                    long long s0, long long l0, const Params& p) {
  validate_instance(sigma, s0, l0, p);
  const long long width = l0 + 1;
  const size_t cells = size_t(s0 + 1) * size_t(l0 + 1);
  const bool maximize = mode == Mode::MaxReasonable;

  Layer a(cells), b(cells);
  Layer* cur = &a;
  Layer* nxt = &b;
  cur->clear();
  cur->relax(s0 * width + l0, 0, maximize);

  for (long long bin : sigma) {
    nxt->clear();
    for (long long k : cur->act) {
      const long long s = k / width;
      const long long l = k % width;
      const long long c = cur->get(k);
      for_each_move(mode, bin, s, l, p, [&](const Fill& f) {
        nxt->relax(k - f.num_s * width - f.num_l, c + (f.empty() ? 0 : bin), maximize);
      });
    }
    std::swap(cur, nxt);
  }
  if (!cur->has(0)) return std::nullopt;
  return cur->get(0);
}

long long lookup_or(const std::vector<std::pair<long long, long long>>& m,
                    long long key, long long fallback) {
  auto it = std::lower_bound(m.begin(), m.end(), key,
                             [](const auto& e, long long k) { return e.first < k; });
  if (it == m.end() || it->first != key) return fallback;
  return it->second;
}

constexpr long long kUnset = std::numeric_limits<long long>::min();

// Layered variant keeping every layer, so a witness trace can be rebuilt.
std::optional<Trace> solve_trace(Mode mode, std::span<const long long> sigma,
                                 long long s0, long long l0, const Params& p) {
  validate_instance(sigma, s0, l0, p);
  const long long width = l0 + 1;
  const size_t cells = size_t(s0 + 1) * size_t(l0 + 1);
  const bool maximize = mode == Mode::MaxReasonable;
  const size_t n = sigma.size();

  // Forward reachability.
  std::vector<std::vector<long long>> reach(n + 1);
  {
    std::vector<unsigned> stamp(cells, 0);
    unsigned epoch = 0;
    reach[0] = {s0 * width + l0};
    for (size_t i = 0; i < n; ++i) {
      ++epoch;
      for (long long k : reach[i]) {
        for_each_move(mode, sigma[i], k / width, k % width, p, [&](const Fill& f) {
          const long long nk = k - f.num_s * width - f.num_l;
          if (stamp[(size_t)nk] != epoch) {
            stamp[(size_t)nk] = epoch;
            reach[i + 1].push_back(nk);
          }
        });
      }
    }
  }

  // Backward values over reachable states only.
  std::vector<std::vector<std::pair<long long, long long>>> vals(n + 1);
  if (std::find(reach[n].begin(), reach[n].end(), 0LL) != reach[n].end())
    vals[n].push_back({0, 0});
  for (size_t i = n; i-- > 0;) {
    for (long long k : reach[i]) {
      long long best = kUnset;
      for_each_move(mode, sigma[i], k / width, k % width, p, [&](const Fill& f) {
        const long long child =
            lookup_or(vals[i + 1], k - f.num_s * width - f.num_l, kUnset);
        if (child == kUnset) return;
        const long long c = child + (f.empty() ? 0 : sigma[i]);
        if (best == kUnset || (maximize ? c > best : c < best)) best = c;
      });
      if (best != kUnset) vals[i].push_back({k, best});
    }
    std::sort(vals[i].begin(), vals[i].end());
  }

  const long long start = s0 * width + l0;
  const long long total = lookup_or(vals[0], start, kUnset);
  if (total == kUnset) return std::nullopt;

  Trace out{p, s0, l0, {}};
  long long cur = start;
  for (size_t i = 0; i < n; ++i) {
    const long long want = lookup_or(vals[i], cur, kUnset);
    Fill pick;
    bool picked = false;
    for_each_move(mode, sigma[i], cur / width, cur % width, p, [&](const Fill& f) {
      const long long child = lookup_or(vals[i + 1], cur - f.num_s * width - f.num_l, kUnset);
      if (child == kUnset) return;
      if (child + (f.empty() ? 0 : sigma[i]) != want) return;
      // deterministic tie-break: largest (num_l, num_s) first
      if (!picked || std::pair(f.num_l, f.num_s) > std::pair(pick.num_l, pick.num_s)) {
        pick = f;
        picked = true;
      }
    });
    out.entries.push_back({sigma[i], pick});
    cur -= pick.num_s * width + pick.num_l;
  }
  return out;
}

}  // namespace

std::optional<long long> opt_cost(std::span<const long long> sigma, long long s,
                                  long long l, const Params& p) {
  return solve_cost(Mode::MinValid, sigma, s, l, p);
}

std::optional<Trace> opt_trace(std::span<const long long> sigma, long long s,
                               long long l, const Params& p) {
  return solve_trace(Mode::MinValid, sigma, s, l, p);
}

std::optional<long long> max_reasonable_cost(std::span<const long long> sigma,
                                             long long s, long long l,
                                             const Params& p) {
  return solve_cost(Mode::MaxReasonable, sigma, s, l, p);
}

std::optional<Trace> max_reasonable_trace(std::span<const long long> sigma,
                                          long long s, long long l, const Params& p) {
  return solve_trace(Mode::MaxReasonable, sigma, s, l, p);
}

std::optional<long long> opt_bruteforce(std::span<const long long> sigma, long long s,
                                        long long l, const Params& p,
                                        long long node_budget) {
  validate_instance(sigma, s, l, p);

  // Bound the enumeration before starting: product over bins of the number
  // of fills that could ever be offered there.
  {
    __int128 prod = 1;
    for (long long bin : sigma) {
      long long cnt = 1;  // the empty fill
      for (long long b = 0; b <= std::min(l, bin / p.L); ++b)
        cnt += std::min(s, (bin - b * p.L) / p.S) + (b > 0 ? 1 : 0);
      prod *= cnt;
      if (prod > node_budget)
        throw SearchSpaceTooLarge("brute-force fill combinations exceed budget");
    }
  }

  const size_t n = sigma.size();
  std::vector<long long> suffix(n + 1, 0);
  for (size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + sigma[i];

  long long best = std::numeric_limits<long long>::max();
  bool found = false;

  auto rec = [&](auto&& self, size_t i, long long s_rem, long long l_rem,
                 long long cost) -> void {
    const long long volume = s_rem * p.S + l_rem * p.L;
    if (found && cost + volume >= best) return;
    if (s_rem == 0 && l_rem == 0) {
      // remaining bins are validly skipped at no cost
      best = cost;
      found = true;
      return;
    }
    if (i == n || volume > suffix[i]) return;
    const long long bin = sigma[i];
    for (long long b = std::min(l_rem, bin / p.L); b >= 0; --b) {
      const long long space = bin - b * p.L;
      for (long long a = std::min(s_rem, space / p.S); a >= (b == 0 ? 1 : 0); --a)
        self(self, i + 1, s_rem - a, l_rem - b, cost + bin);
    }
    if ((s_rem == 0 || bin < p.S) && (l_rem == 0 || bin < p.L))
      self(self, i + 1, s_rem, l_rem, cost);
  };
  rec(rec, 0, s, l, 0);

  if (!found) return std::nullopt;
  return best;
}

}  // namespace packlab
