#include "packlab/core.hpp"

namespace packlab {

std::string_view to_string(Range r) {
  switch (r) {
    case Range::LowL: return "LowL";
    case Range::MidL: return "MidL";
    case Range::HighL: return "HighL";
  }
  return "?";
}

Range classify_range(long long s, long long l) {
  if (2 * l <= s) return Range::LowL;
  if (6 * l <= 5 * s) return Range::MidL;
  return Range::HighL;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<Fill> enumerate_thrifty_fills(long long bin_size, const Inventory& inv,
                                          const Params& p) {
  if (bin_size < 1 || bin_size > p.M)
    throw std::invalid_argument("bin size outside [1, M]");
  std::vector<Fill> out;
  for_each_thrifty_fill(bin_size, inv.s_rem, inv.l_rem, p,
                        [&](const Fill& f) { out.push_back(f); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Fill> enumerate_reasonable_fills(long long bin_size, const Params& p) {
  if (bin_size < p.S || bin_size > p.M)
    throw std::invalid_argument("bin size outside [S, M]");
  std::vector<Fill> out;
  for_each_reasonable_fill(bin_size, p, [&](const Fill& f) { out.push_back(f); });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Shared well-formedness walk. Returns false if a fill is negative, exceeds
// the running inventory, or overflows its bin.
bool walk_entries(const Trace& t, Inventory& inv) {
  inv = {t.initial_s, t.initial_l};
  if (inv.s_rem < 0 || inv.l_rem < 0) return false;
  for (const TraceEntry& e : t.entries) {
    if (e.bin_size < 1 || e.bin_size > t.params.M) return false;
    const Fill& f = e.fill;
    if (f.num_s < 0 || f.num_l < 0) return false;
    if (f.num_s > inv.s_rem || f.num_l > inv.l_rem) return false;
    if (f.used_space(t.params) > e.bin_size) return false;
    inv.s_rem -= f.num_s;
    inv.l_rem -= f.num_l;
  }
  return true;
}

}  // namespace

bool is_valid_trace(const Trace& t) {
  Inventory scratch;
  if (!walk_entries(t, scratch)) return false;
  Inventory inv{t.initial_s, t.initial_l};
  for (const TraceEntry& e : t.entries) {
    if (e.fill.empty()) {
      if (inv.s_rem > 0 && e.bin_size >= t.params.S) return false;
      if (inv.l_rem > 0 && e.bin_size >= t.params.L) return false;
    }
    inv.s_rem -= e.fill.num_s;
    inv.l_rem -= e.fill.num_l;
  }
  return true;
}

bool is_thrifty_trace(const Trace& t) {
  Inventory scratch;
  if (!walk_entries(t, scratch)) return false;
  Inventory inv{t.initial_s, t.initial_l};
  for (const TraceEntry& e : t.entries) {
    inv.s_rem -= e.fill.num_s;
    inv.l_rem -= e.fill.num_l;
    const long long leftover = e.bin_size - e.fill.used_space(t.params);
    if (leftover >= t.params.S && inv.s_rem > 0) return false;
    if (leftover >= t.params.L && inv.l_rem > 0) return false;
  }
  return true;
}

bool is_reasonable_trace(const Trace& t) {
  if (!is_thrifty_trace(t)) return false;
  Inventory inv{t.initial_s, t.initial_l};
  bool front = inv.l_rem >= 1 && inv.s_rem >= 3;
  for (const TraceEntry& e : t.entries) {
    if (front && e.bin_size >= t.params.S) {
      bool canonical = false;
      for_each_reasonable_fill(e.bin_size, t.params,
                               [&](const Fill& f) { canonical = canonical || f == e.fill; });
      if (!canonical) return false;
    }
    inv.s_rem -= e.fill.num_s;
    inv.l_rem -= e.fill.num_l;
    if (front && (inv.l_rem == 0 || inv.s_rem <= 2)) front = false;
  }
  return true;
}

bool is_complete_trace(const Trace& t) {
  Inventory inv;
  if (!walk_entries(t, inv)) return false;
  return inv.empty();
}

long long trace_cost(const Trace& t) {
  long long cost = 0;
  for (const TraceEntry& e : t.entries)
    if (!e.fill.empty()) cost += e.bin_size;
  return cost;
}

}  // namespace packlab
