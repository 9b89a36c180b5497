#pragma once

#include "sumsetkit/core.hpp"

namespace sumsetkit {
namespace baselines {

/// Bellman reachability DP over the normalized multiset, bit-packed.
SumSet bellman_dp(const MultisetInput& s, Value u);

/// Exhaustive 2^n enumeration; expanded cardinality must be <= 24.
SumSet brute_force(const MultisetInput& s, Value u);
SumSet brute_force_mod(const MultisetInput& s, Value m);
SumSet brute_force_mod(std::span<const Value> values, Value m);

/// Folklore O(n^2 u) cardinality DP: reachable (sum, cardinality) pairs.
CardSumSet card_dp(std::span<const Value> set, Value u);

} // namespace baselines
} // namespace sumsetkit
