#pragma once

#include "packlab/core.hpp"

#include <optional>
#include <span>
#include <stdexcept>

namespace packlab {

struct SearchSpaceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Minimum cost of a complete valid packing of s small and l large items into
// the bin sequence, or nullopt when the sequence cannot hold them. The search
// is restricted to thrifty per-bin fills, which preserves the optimum.
std::optional<long long> opt_cost(std::span<const long long> sigma, long long s,
                                  long long l, const Params& p);

// Same optimum together with a witness trace. Among equal-cost optima the
// witness prefers the lexicographically larger (num_l, num_s) fill at the
// earliest bin where optima differ.
std::optional<Trace> opt_trace(std::span<const long long> sigma, long long s,
                               long long l, const Params& p);

// Exhaustive minimum over all complete valid packings, with no thriftiness
// restriction. Cross-checks opt_cost. Throws SearchSpaceTooLarge when the
// product of per-bin fill counts exceeds node_budget.
std::optional<long long> opt_bruteforce(std::span<const long long> sigma, long long s,
                                        long long l, const Params& p,
                                        long long node_budget = 10'000'000);

// Maximum cost over complete packings that are thrifty and keep to the
// canonical fills while both item types are plentiful (large remains and at
// least three small remain).
std::optional<long long> max_reasonable_cost(std::span<const long long> sigma,
                                             long long s, long long l,
                                             const Params& p);

std::optional<Trace> max_reasonable_trace(std::span<const long long> sigma,
                                          long long s, long long l, const Params& p);

}  // namespace packlab
