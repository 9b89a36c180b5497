#pragma once

#include "sumsetkit/core.hpp"
#include "sumsetkit/witness.hpp"

namespace sumsetkit {

enum class Strategy {
    kAuto,       // cheapest by closed-form cost predictors, including the DP
    kSigma,      // sigma-bounded divide and conquer
    kR0Sqrt,     // geometric layering, r0 = u / sqrt(n)
    kR0TwoThirds,// geometric layering, r0 = u^(2/3)
    kDp,         // Bellman baseline
    kMain,       // better of the two layering choices by predicted cost
};

/// All subset sums of a duplicate-free set over [0, sigma].
SumSet all_sums_sigma(std::span<const Value> set);

/// Sums with cardinality annotation for a set inside [x, x+len], subsets of
/// size at most alpha. Computed in sheared coordinates (i - x*j, j).
CardSumSet capped_interval_sums(std::span<const Value> set, Value x, Value len, int alpha);

/// Sums up to u for a set inside [x, x+len], via alpha = floor(u/x).
SumSet interval_sums(std::span<const Value> set, Value x, Value len, Value u);

/// Geometric layering of [1, u] with layer bounds r_i = floor(2^i * r0).
Layering partition_geometric(std::span<const Value> set, Value u, Value r0);

/// T_i = sums up to u of each layer.
std::vector<SumSet> layer_sums(const Layering& layering, Value u);

/// Exact sums of a multiset up to u. Pipeline: normalize, split into two
/// sets, per-set strategy, final combine at cap u. Pass a Trace to retain
/// the recursion record for solution recovery.
SumSet all_subset_sums(const MultisetInput& s, Value u, Strategy strategy = Strategy::kAuto,
                       Trace* trace = nullptr);

Strategy parse_strategy(std::string_view name); // throws ContractError on unknown names

} // namespace sumsetkit
