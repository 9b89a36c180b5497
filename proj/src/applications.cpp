#include "sumsetkit/applications.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

#include "sumsetkit/integer_engine.hpp"
#include "sumsetkit/witness.hpp"
#include "util.hpp"

namespace sumsetkit {

// ---------------------------------------------------------------------------
// WeightedGraph
// ---------------------------------------------------------------------------

WeightedGraph WeightedGraph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long n = 0, m = 0;
    if (!(in >> n >> m) || n < 1 || m < 0)
        throw ParseError("graph parse error: expected \"n m\" header");
    WeightedGraph g;
    g.vertex_count = static_cast<int>(n);
    for (long long i = 0; i < m; ++i) {
        long long a = 0, b = 0;
        unsigned long long w = 0;
        if (!(in >> a >> b >> w))
            throw ParseError("graph parse error: expected \"a b w\" edge line");
        if (a < 1 || a > n || b < 1 || b > n || a == b || w < 1 || w > kMaxValue)
            throw ParseError("graph parse error: invalid edge");
        g.edges.push_back({static_cast<int>(a), static_cast<int>(b), static_cast<Value>(w)});
    }
    std::string rest;
    if (in >> rest) throw ParseError("graph parse error: trailing data");
    return g;
}

std::vector<int> PartitionResult::side_one() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < side.size(); ++v)
        if (side[v] == 1) out.push_back(static_cast<int>(v) + 1);
    return out;
}

// ---------------------------------------------------------------------------
// bottleneck_partition
// ---------------------------------------------------------------------------

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

struct Component {
    int size = 0;
    int min_vertex = 0;             // 1-based, for deterministic tie-breaks
    std::vector<int> vertices;      // 1-based
};

// components after deleting edges of weight <= threshold
std::vector<Component> components_above(const WeightedGraph& g, Value threshold) {
    Dsu dsu(g.vertex_count);
    for (const auto& e : g.edges)
        if (e.weight > threshold) dsu.unite(e.a - 1, e.b - 1);
    std::map<int, Component> by_root;
    for (int v = 0; v < g.vertex_count; ++v) {
        Component& c = by_root[dsu.find(v)];
        c.size += 1;
        if (c.min_vertex == 0) c.min_vertex = v + 1;
        c.vertices.push_back(v + 1);
    }
    std::vector<Component> out;
    for (auto& [root, c] : by_root) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
        return a.min_vertex < b.min_vertex;
    });
    return out;
}

bool sizes_reach_half(const std::vector<Component>& comps, int half, Trace* trace) {
    std::vector<MultisetEntry> entries;
    for (const auto& c : comps) entries.push_back({static_cast<Value>(c.size), 1});
    const MultisetInput sizes = MultisetInput::from_entries(std::move(entries));
    const SumSet sums =
        all_subset_sums(sizes, static_cast<Value>(half), Strategy::kSigma, trace);
    return sums.contains(static_cast<Value>(half));
}

} // namespace

PartitionResult bottleneck_partition(const WeightedGraph& g) {
    const int n = g.vertex_count;
    if (n < 2 || n % 2 != 0)
        throw ContractError("bottleneck_partition: vertex count must be even and >= 2");
    const int half = n / 2;

    std::vector<Value> candidates{0};
    for (const auto& e : g.edges) candidates.push_back(e.weight);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // feasibility is monotone in the threshold: binary search the smallest
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (sizes_reach_half(components_above(g, candidates[mid]), half, nullptr))
            hi = mid;
        else
            lo = mid + 1;
    }
    const Value bottleneck = candidates[lo];

    const auto comps = components_above(g, bottleneck);
    Trace trace;
    if (!sizes_reach_half(comps, half, &trace))
        throw ContractError("bottleneck_partition: max threshold must be feasible");
    std::vector<Value> chosen_sizes = recover_subset(trace, static_cast<Value>(half));

    // multiplicity of each chosen size, filled by components in min-vertex order
    std::map<Value, std::uint64_t> need;
    for (Value s : chosen_sizes) ++need[s];
    PartitionResult result;
    result.bottleneck = bottleneck;
    result.side.assign(static_cast<std::size_t>(n), 2);
    for (const auto& c : comps) {
        auto it = need.find(static_cast<Value>(c.size));
        if (it == need.end() || it->second == 0) continue;
        --it->second;
        for (int v : c.vertices) result.side[static_cast<std::size_t>(v - 1)] = 1;
    }

    // the reported bottleneck equals the heaviest crossing edge (0 if none)
    Value heaviest = 0;
    for (const auto& e : g.edges)
        if (result.side[static_cast<std::size_t>(e.a - 1)] !=
            result.side[static_cast<std::size_t>(e.b - 1)])
            heaviest = std::max(heaviest, e.weight);
    if (heaviest != bottleneck && !(heaviest == 0 && bottleneck == 0))
        throw ContractError("bottleneck_partition: threshold does not match the cut");
    return result;
}

// ---------------------------------------------------------------------------
// card_sums
// ---------------------------------------------------------------------------

namespace {

CardSumSet card_sums_rec(std::span<const Value> vals, Value u) {
    const std::size_t n = vals.size();
    if (n <= 4) {
        Value sigma = 0;
        for (Value v : vals) sigma = detail::sat_add(sigma, v);
        CardSumSet out(std::min(sigma, u), static_cast<int>(n));
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            Value s = 0;
            bool over = false;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) {
                    s = detail::sat_add(s, vals[i]);
                    if (s > u) {
                        over = true;
                        break;
                    }
                }
            if (!over) out.insert(s, std::popcount(mask));
        }
        return out;
    }
    const std::size_t mid = (n + 1) / 2;
    const CardSumSet l = card_sums_rec(vals.subspan(0, mid), u);
    const CardSumSet r = card_sums_rec(vals.subspan(mid), u);
    return bool_conv_2d(l, r, u, static_cast<int>(n));
}

} // namespace

CardSumSet card_sums(std::span<const Value> set, Value u) {
    std::vector<Value> vals(set.begin(), set.end());
    std::sort(vals.begin(), vals.end());
    for (Value v : vals)
        if (v == 0) throw ContractError("card_sums: values must be positive");
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw ContractError("card_sums: duplicate value in set input");
    return card_sums_rec(vals, u);
}

// ---------------------------------------------------------------------------
// count_sums / banzhaf
// ---------------------------------------------------------------------------

namespace {

CountVector count_list_rec(std::span<const Value> vals, Value u, CountVector::Mode mode) {
    if (vals.empty()) return CountVector::delta0(mode, u);
    if (vals.size() == 1) {
        CountVector out = CountVector::delta0(mode, u);
        if (vals[0] <= u) {
            if (out.is_exact())
                out.set_exact(vals[0], 1);
            else
                out.set_residue(vals[0], 1);
        }
        return out;
    }
    const std::size_t mid = vals.size() / 2;
    const CountVector l = count_list_rec(vals.subspan(0, mid), u, mode);
    const CountVector r = count_list_rec(vals.subspan(mid), u, mode);
    return count_conv(l, r, u);
}

} // namespace

CountVector count_voter_list(std::span<const Value> weights, Value u, CountVector::Mode mode) {
    for (Value w : weights)
        if (w == 0) throw ContractError("counting: weights must be positive");
    return count_list_rec(weights, u, mode);
}

CountVector count_sums(std::span<const Value> set, Value u, CountVector::Mode mode) {
    std::vector<Value> vals(set.begin(), set.end());
    std::sort(vals.begin(), vals.end());
    for (Value v : vals)
        if (v == 0) throw ContractError("count_sums: values must be positive");
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw ContractError("count_sums: duplicate value in set input");
    return count_list_rec(vals, u, mode);
}

std::vector<BigInt> banzhaf(std::span<const Value> weights, Value quota) {
    if (weights.empty()) throw ContractError("banzhaf: need at least one voter");
    Value sigma = 0;
    for (Value w : weights) {
        if (w == 0) throw ContractError("banzhaf: weights must be positive");
        sigma = detail::sat_add(sigma, w);
    }
    if (quota < 1 || quota > sigma)
        throw ContractError("banzhaf: quota must satisfy 1 <= q <= sigma");

    // N over the full voter list; swings come from the deconvolved N_{S\{i}}
    const CountVector all = count_voter_list(weights, quota - 1, CountVector::Mode::kExact);

    std::vector<BigInt> swings(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const Value w = weights[i];
        std::vector<BigInt> without(static_cast<std::size_t>(quota), 0);
        for (Value x = 0; x < quota; ++x) {
            BigInt v = all.exact(x);
            if (x >= w) v -= without[static_cast<std::size_t>(x - w)];
            without[static_cast<std::size_t>(x)] = std::move(v);
        }
        BigInt swing = 0;
        const Value lo = quota > w ? quota - w : 0;
        for (Value x = lo; x < quota; ++x) swing += without[static_cast<std::size_t>(x)];
        swings[i] = std::move(swing);
    }
    return swings;
}

} // namespace sumsetkit
