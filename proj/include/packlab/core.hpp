#pragma once

#include <algorithm>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace packlab {

inline constexpr long long kMaxItemSize = 1LL << 20;
inline constexpr long long kMaxSequenceLen = 1LL << 20;

// The size system: small items of size S, large items of size L = 2S-1, and
// bins of size at most M = 4S-3. M < 2L, so no bin ever holds two large
// items, and a bin holding a large plus a small item has less than S-1 free.
struct Params {
  long long S;
  long long L;
  long long M;

  explicit Params(long long s) : S(s), L(2 * s - 1), M(4 * s - 3) {
    if (s < 2 || s > kMaxItemSize)
      throw std::invalid_argument("item size S must be in [2, 2^20]");
  }

  friend bool operator==(const Params&, const Params&) = default;
};

// Unpacked items remaining, shared between policies and oracles.
struct Inventory {
  long long s_rem = 0;
  long long l_rem = 0;

  bool empty() const { return s_rem == 0 && l_rem == 0; }
  long long total() const { return s_rem + l_rem; }

  friend bool operator==(const Inventory&, const Inventory&) = default;
};

// What one bin receives. (0,0) marks a skipped bin.
struct Fill {
  long long num_s = 0;
  long long num_l = 0;

  bool empty() const { return num_s == 0 && num_l == 0; }
  long long used_space(const Params& p) const { return num_s * p.S + num_l * p.L; }

  friend auto operator<=>(const Fill&, const Fill&) = default;
};

struct TraceEntry {
  long long bin_size = 0;
  Fill fill;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

// Full record of a packing: every offered bin in order, skipped bins
// included with an empty fill.
struct Trace {
  Params params = Params(2);
  long long initial_s = 0;
  long long initial_l = 0;
  std::vector<TraceEntry> entries;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Which side of the initial item mix dominates: few large items (2l <= s),
// the middle band (s < 2l and 6l <= 5s), or large-heavy (6l > 5s).
enum class Range { LowL, MidL, HighL };

std::string_view to_string(Range r);
Range classify_range(long long s, long long l);

long long floor_div(long long a, long long b);

// Calls fn(Fill) for every fill of bin_size that leaves no room for any item
// still unpacked afterwards. The empty fill qualifies only when no remaining
// item fits in the bin at all.
template <typename Fn>
void for_each_thrifty_fill(long long bin_size, long long s_rem, long long l_rem,
                           const Params& p, Fn&& fn) {
  if ((s_rem == 0 || bin_size < p.S) && (l_rem == 0 || bin_size < p.L)) fn(Fill{});
  const long long max_l = std::min(l_rem, bin_size / p.L);
  for (long long b = 0; b <= max_l; ++b) {
    const long long space = bin_size - b * p.L;
    const long long max_s = std::min(s_rem, space / p.S);
    for (long long a = (b == 0 ? 1 : 0); a <= max_s; ++a) {
      const long long leftover = space - a * p.S;
      if (leftover >= p.S && a < s_rem) continue;
      if (leftover >= p.L && b < l_rem) continue;
      fn(Fill{a, b});
    }
  }
}

// The canonical fills a balanced packing uses while both item types are
// plentiful. Requires S <= bin_size <= M.
template <typename Fn>
void for_each_reasonable_fill(long long bin_size, const Params& p, Fn&& fn) {
  if (bin_size < p.L) {
    fn(Fill{1, 0});
  } else if (bin_size == p.L) {
    fn(Fill{0, 1});
  } else if (bin_size < p.L + p.S) {
    fn(Fill{0, 1});
    fn(Fill{2, 0});
  } else if (bin_size == p.L + p.S) {
    fn(Fill{1, 1});
  } else {
    fn(Fill{1, 1});
    fn(Fill{3, 0});
  }
}

std::vector<Fill> enumerate_thrifty_fills(long long bin_size, const Inventory& inv,
                                          const Params& p);
std::vector<Fill> enumerate_reasonable_fills(long long bin_size, const Params& p);

// A trace is valid when every skipped bin was smaller than every item still
// unpacked at the moment it arrived. Malformed traces (overfull bins,
// negative counts, fills exceeding the running inventory) are not valid.
bool is_valid_trace(const Trace& t);

// No bin leaves space that could have held an item still unpacked once the
// bin was closed. Thrifty implies valid.
bool is_thrifty_trace(const Trace& t);

// Thrifty, and every bin up to and including the key bin (the first bin
// after which no large items remain or at most two small items remain) holds
// one of the canonical fills for its size.
bool is_reasonable_trace(const Trace& t);

bool is_complete_trace(const Trace& t);

// Sum of the sizes of the bins that received at least one item.
long long trace_cost(const Trace& t);

}  // namespace packlab
