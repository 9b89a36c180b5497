#pragma once

// Shared recursion kernels. The cyclic engine maps segment members onto
// integers and reuses the sigma kernel; trace recovery walks the nodes these
// functions emit.

#include "sumsetkit/witness.hpp"

namespace sumsetkit::detail {

using ElemSpan = std::span<const TraceElement>;

// Direct-enumeration cutoff for the divide-and-conquer kernels.
inline constexpr std::size_t kEnumCutoff = 4;

TraceNodePtr make_leaf(ElemSpan elems, const SumSet& sums);

SumSet zero_leaf(ElemSpan elems, SumMode mode, Value bound, TraceNodePtr* slot);

/// Divide-and-conquer sum set with every merge capped at min(subtree sum, cap).
SumSet sigma_sums(ElemSpan elems, Value cap, TraceNodePtr* slot);

/// Leaf routing inside the cardinality-grid recursion. Auto picks by
/// predicted cost; the forced modes exist for tests.
enum class GridRoute { kAuto, kForceTree, kForceDp };

/// Cardinality grid of elems (ascending) in the node's own shear: base is
/// the smallest member, cardinality capped at min(alpha, |elems|).
CardSumSet card_interval_sheared(ElemSpan elems, Value alpha, TraceNodePtr* slot,
                                 GridRoute route = GridRoute::kAuto);

/// Sums up to u of elems (ascending, all >= x) via the sheared grid.
SumSet interval_sums_impl(ElemSpan elems, Value x, Value u, TraceNodePtr* slot);

} // namespace sumsetkit::detail
