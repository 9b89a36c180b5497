#pragma once

#include "sumsetkit/convolution.hpp"
#include "sumsetkit/core.hpp"

namespace sumsetkit {

struct WeightedEdge {
    int a = 0, b = 0; // 1-based vertex ids
    Value weight = 0;
};

struct WeightedGraph {
    int vertex_count = 0;
    std::vector<WeightedEdge> edges;

    /// "n m" on the first line, then m lines "a b w".
    static WeightedGraph parse(std::string_view text);
};

struct PartitionResult {
    Value bottleneck = 0;
    std::vector<int> side; // per vertex (0-based), 1 or 2; both sides have n/2

    std::vector<int> side_one() const; // 1-based ids, ascending
};

/// Split the vertices into two equal halves minimizing the heaviest edge
/// across the cut. Feasibility at threshold B removes edges of weight <= B
/// and asks the component sizes for a subset summing to n/2.
PartitionResult bottleneck_partition(const WeightedGraph& g);

/// All (sum, cardinality) pairs with sum <= u for a duplicate-free set.
CardSumSet card_sums(std::span<const Value> set, Value u);

/// N_{u,S}: the number of subsets summing to each x <= u.
CountVector count_sums(std::span<const Value> set, Value u,
                       CountVector::Mode mode = CountVector::Mode::kModular);

/// Counting over a voter list (duplicate weights allowed).
CountVector count_voter_list(std::span<const Value> weights, Value u, CountVector::Mode mode);

/// Raw Banzhaf indices: per voter, the number of coalitions of the others
/// that win with the voter and lose without. Exact counting throughout.
std::vector<BigInt> banzhaf(std::span<const Value> weights, Value quota);

} // namespace sumsetkit
