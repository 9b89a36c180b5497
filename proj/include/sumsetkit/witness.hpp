#pragma once

#include <memory>
#include <optional>

#include "sumsetkit/convolution.hpp"
#include "sumsetkit/core.hpp"

namespace sumsetkit {

// ---------------------------------------------------------------------------
// Trace: recursion-tree record of intermediate sum sets, enabling traceback.
// ---------------------------------------------------------------------------

struct TraceNode;
using TraceNodePtr = std::unique_ptr<TraceNode>;

/// One selectable element at a leaf: value in the leaf's own coordinates plus
/// the original input copies it stands for.
using TraceElement = NormalizedElement;

struct TraceNode {
    enum class Kind {
        kLeafSet,       // element list with its stored SumSet
        kLeafCard,      // element list with its sheared cardinality grid
        kCombine,       // bool_conv of children, capped
        kCombineCard,   // bool_conv_2d of children (shared shear base)
        kCombineCyclic, // left lifted by pivot q, cyclic conv mod m
        kProjectCard,   // sheared grid projected onto sums <= bound
        kSegmentMap,    // integer sums of child mapped by *mult mod m
    };

    Kind kind;

    // kCombine/kCombineCyclic/kProjectCard/kSegmentMap/kLeafSet result
    SumSet sums;
    // kLeafCard/kCombineCard result (sheared coordinates)
    CardSumSet grid;

    TraceNodePtr left, right; // right unused for unary kinds

    std::vector<TraceElement> elements; // leaves only

    Value shear_base = 0; // kLeafCard/kCombineCard/kProjectCard: the x in (i - x*j, j)
    Value lift = 1;       // kCombineCyclic: pivot q applied to the left child
    Value map_mult = 1;   // kSegmentMap: segment generator x
    Value modulus = 0;    // cyclic kinds: m

    TraceNode(Kind k) : kind(k) {}
};

/// Record of an engine run; root sum set equals the engine's output.
struct Trace {
    TraceNodePtr root;
    SumMode mode = SumMode::kInteger;

    const SumSet& result() const { return root->sums; }
};

/// Walk the trace top-down and return original input elements summing
/// (capped or modular, per the engine that built the trace) to target.
/// Throws UnrealizableError if target is not in the root sum set.
std::vector<Value> recover_subset(const Trace& trace, Value target);

// ---------------------------------------------------------------------------
// Size/Sum oracles over witness sets W_i = {x in X : i - x in Y}
// ---------------------------------------------------------------------------

/// Query restricted to Q, a subset of the left operand's support.
struct WitnessQuery {
    SumSet q;
    SumSet y;
};

/// Entry i: |W_i ∩ Q|, for i in [0, q.bound + y.bound].
std::vector<std::uint64_t> size_oracle(const WitnessQuery& query);

/// Entry i: sum of elements of W_i ∩ Q.
std::vector<std::uint64_t> sum_oracle(const WitnessQuery& query);

/// For each member i of (X ⊕ Y) ∩ [0, cap], a witness x with x in X and
/// i - x in Y. Resolved by the size/sum oracle pair with halving of Q over
/// the support of X. Entries for non-members are empty.
std::vector<std::optional<Value>> witness_function(const SumSet& x, const SumSet& y, Value cap);

} // namespace sumsetkit
