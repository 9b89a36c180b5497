#include "sumsetkit/witness.hpp"

#include <algorithm>
#include <bit>

#include "ntt.hpp"
#include "util.hpp"

namespace sumsetkit {

namespace {

void emit_sources(const TraceElement& e, std::vector<Value>& out) {
    for (const auto& [orig, count] : e.source)
        for (std::uint64_t k = 0; k < count; ++k) out.push_back(orig);
}

void recover_node(const TraceNode& node, Value t, std::vector<Value>& out);

// rebuild the same DP grid a leaf stored, over any element span
CardSumSet grid_of(std::span<const TraceElement> elems, Value base, int max_card) {
    Value width = 0;
    const std::size_t take =
        std::min<std::size_t>(elems.size(), static_cast<std::size_t>(max_card));
    for (std::size_t i = elems.size() - take; i < elems.size(); ++i)
        width += elems[i].value - base;
    CardSumSet out(width, std::min<int>(max_card, static_cast<int>(elems.size())));
    out.insert(0, 0);
    int filled = 0;
    for (const auto& e : elems) {
        for (int k = std::min(filled + 1, out.alpha()); k >= 1; --k)
            out.row(k).shift_or(out.row(k - 1), e.value - base);
        ++filled;
    }
    return out;
}

// match (sheared sum, cardinality) over a leaf's element span by halving;
// grids of the halves are rebuilt on demand
void recover_card_elems(std::span<const TraceElement> elems, Value base, Value s, int j,
                        std::vector<Value>& out) {
    const std::size_t n = elems.size();
    if (n <= 4) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (std::popcount(mask) != j) continue;
            Value sum = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) sum += elems[i].value - base;
            if (sum != s) continue;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) emit_sources(elems[i], out);
            return;
        }
        throw ContractError("trace: cardinality leaf cannot produce the cell");
    }
    const std::size_t mid = (n + 1) / 2;
    const auto left = elems.subspan(0, mid);
    const auto right = elems.subspan(mid);
    const Value rbase = right.front().value;
    const Value rlift = rbase - base;
    const CardSumSet gl = grid_of(left, base, j);
    const CardSumSet gr = grid_of(right, rbase, j);
    for (int j1 = 0; j1 <= std::min<int>(j, gl.alpha()); ++j1) {
        const int j2 = j - j1;
        if (j2 > gr.alpha()) continue;
        const Value shift = rlift * static_cast<Value>(j2);
        for (Value s1 : gl.row(j1).members()) {
            if (s1 + shift > s) break;
            const Value s2 = s - s1 - shift;
            if (gr.contains(s2, j2)) {
                recover_card_elems(left, base, s1, j1, out);
                recover_card_elems(right, rbase, s2, j2, out);
                return;
            }
        }
    }
    throw ContractError("trace: cardinality span cannot produce the cell");
}

// (s, j) is in the node's own shear
void recover_card_cell(const TraceNode& node, Value s, int j, std::vector<Value>& out) {
    switch (node.kind) {
        case TraceNode::Kind::kLeafCard:
            recover_card_elems(node.elements, node.shear_base, s, j, out);
            return;
        case TraceNode::Kind::kCombineCard: {
            const CardSumSet& l = node.left->grid;
            const CardSumSet& r = node.right->grid;
            const Value lift_l = node.left->shear_base - node.shear_base;
            const Value lift_r = node.right->shear_base - node.shear_base;
            for (int j1 = 0; j1 <= std::min(j, l.alpha()); ++j1) {
                const int j2 = j - j1;
                if (j2 > r.alpha()) continue;
                const Value shift = lift_l * static_cast<Value>(j1) +
                                    lift_r * static_cast<Value>(j2);
                for (Value s1 : l.row(j1).members()) {
                    if (s1 + shift > s) break;
                    const Value s2 = s - s1 - shift;
                    if (r.contains(s2, j2)) {
                        recover_card_cell(*node.left, s1, j1, out);
                        recover_card_cell(*node.right, s2, j2, out);
                        return;
                    }
                }
            }
            throw ContractError("trace: cardinality combine cannot split the cell");
        }
        default:
            throw ContractError("trace: unexpected node kind in cardinality walk");
    }
}

void recover_leaf_set(const TraceNode& node, Value t, std::vector<Value>& out) {
    const auto& elems = node.elements;
    const bool cyclic = node.sums.mode() == SumMode::kCyclic;
    const Value bound = node.sums.bound();
    // prefix reachability tables, then walk backwards
    std::vector<Bitvec> dp;
    dp.reserve(elems.size() + 1);
    Bitvec start(bound + 1);
    start.set(0);
    dp.push_back(start);
    for (const auto& e : elems) {
        Bitvec next = dp.back();
        if (cyclic) {
            const Value m = bound + 1;
            const Value v = e.value % m;
            for (Value x : dp.back().members()) next.set(x + v >= m ? x + v - m : x + v);
        } else {
            next.shift_or(dp.back(), e.value);
        }
        dp.push_back(std::move(next));
    }
    if (!dp.back().test(t)) throw ContractError("trace: leaf cannot produce the target");
    Value cur = t;
    for (std::size_t k = elems.size(); k > 0; --k) {
        if (dp[k - 1].test(cur)) continue; // element k-1 not needed
        const Value v = elems[k - 1].value;
        if (cyclic) {
            const Value m = bound + 1;
            cur = (cur + m - v % m) % m;
        } else {
            cur -= v;
        }
        emit_sources(elems[k - 1], out);
    }
}

void recover_node(const TraceNode& node, Value t, std::vector<Value>& out) {
    switch (node.kind) {
        case TraceNode::Kind::kLeafSet:
            recover_leaf_set(node, t, out);
            return;
        case TraceNode::Kind::kCombine: {
            const SumSet& l = node.left->sums;
            const SumSet& r = node.right->sums;
            for (Value a : l.members()) {
                if (a > t) break;
                if (r.contains(t - a)) {
                    recover_node(*node.left, a, out);
                    recover_node(*node.right, t - a, out);
                    return;
                }
            }
            throw ContractError("trace: combine cannot split the target");
        }
        case TraceNode::Kind::kCombineCyclic: {
            const Value m = node.modulus;
            const SumSet& r = node.right->sums;
            for (Value a : node.left->sums.members()) {
                const Value la = node.lift * a; // lifted values stay below m
                const Value b = t >= la ? t - la : t + m - la;
                if (r.contains(b)) {
                    recover_node(*node.left, a, out);
                    recover_node(*node.right, b, out);
                    return;
                }
            }
            throw ContractError("trace: cyclic combine cannot split the target");
        }
        case TraceNode::Kind::kProjectCard: {
            const CardSumSet& grid = node.left->grid;
            const Value x = node.shear_base;
            for (int j = 0; j <= grid.alpha(); ++j) {
                const Value base = detail::sat_mul(x, static_cast<Value>(j));
                if (base > t) break;
                if (grid.contains(t - base, j)) {
                    recover_card_cell(*node.left, t - base, j, out);
                    return;
                }
            }
            throw ContractError("trace: projection cannot locate the target");
        }
        case TraceNode::Kind::kSegmentMap: {
            const Value m = node.modulus;
            for (Value v : node.left->sums.members()) {
                if (static_cast<Value>((unsigned __int128)v % m * (node.map_mult % m) % m) == t) {
                    recover_node(*node.left, v, out);
                    return;
                }
            }
            throw ContractError("trace: segment map cannot locate the target");
        }
        default:
            throw ContractError("trace: unexpected node kind in sum walk");
    }
}

} // namespace

std::vector<Value> recover_subset(const Trace& trace, Value target) {
    if (!trace.root) throw ContractError("recover_subset: trace has no root");
    if (!trace.root->sums.contains(target))
        throw UnrealizableError("target is not a realizable sum");
    std::vector<Value> out;
    recover_node(*trace.root, target, out);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Size/Sum oracles
// ---------------------------------------------------------------------------

namespace {

constexpr Value kOracleBoundLimit = Value(1) << 30; // keeps sums below the field prime

std::vector<std::uint64_t> oracle_conv(const std::vector<std::uint64_t>& f, const SumSet& y,
                                       std::size_t out_len) {
    std::vector<std::uint64_t> g(static_cast<std::size_t>(y.bound()) + 1, 0);
    for (Value v : y.members()) g[static_cast<std::size_t>(v)] = 1;
    auto c = ntt::convolve_p64(f, g, 0);
    c.resize(out_len, 0);
    return c;
}

} // namespace

std::vector<std::uint64_t> size_oracle(const WitnessQuery& query) {
    if (query.q.bound() > kOracleBoundLimit || query.y.bound() > kOracleBoundLimit)
        throw ContractError("oracle bounds exceed the exact-count range");
    std::vector<std::uint64_t> f(static_cast<std::size_t>(query.q.bound()) + 1, 0);
    for (Value v : query.q.members()) f[static_cast<std::size_t>(v)] = 1;
    return oracle_conv(f, query.y,
                       static_cast<std::size_t>(query.q.bound() + query.y.bound()) + 1);
}

std::vector<std::uint64_t> sum_oracle(const WitnessQuery& query) {
    if (query.q.bound() > kOracleBoundLimit || query.y.bound() > kOracleBoundLimit)
        throw ContractError("oracle bounds exceed the exact-count range");
    std::vector<std::uint64_t> f(static_cast<std::size_t>(query.q.bound()) + 1, 0);
    for (Value v : query.q.members()) f[static_cast<std::size_t>(v)] = v;
    return oracle_conv(f, query.y,
                       static_cast<std::size_t>(query.q.bound() + query.y.bound()) + 1);
}

// ---------------------------------------------------------------------------
// witness_function: size==1 targets read the witness off the sum oracle;
// the rest binary-search over the support of X, one oracle pair per probed
// half-interval.
// ---------------------------------------------------------------------------

std::vector<std::optional<Value>> witness_function(const SumSet& x, const SumSet& y, Value cap) {
    if (x.mode() != SumMode::kInteger || y.mode() != SumMode::kInteger)
        throw ContractError("witness_function requires integer-capped operands");
    const std::vector<Value> support = x.members();
    std::vector<std::optional<Value>> w(static_cast<std::size_t>(cap) + 1);
    if (support.empty()) return w;

    const SumSet conv = bool_conv(x, y, cap);
    std::vector<Value> unresolved;

    {
        WitnessQuery full{x, y};
        const auto sz = size_oracle(full);
        const auto sm = sum_oracle(full);
        for (Value t : conv.members()) {
            const auto i = static_cast<std::size_t>(t);
            if (i < sz.size() && sz[i] == 1)
                w[i] = sm[i];
            else
                unresolved.push_back(t);
        }
    }

    struct Interval {
        std::size_t lo, hi; // member-index range into support
        std::vector<Value> targets;
    };
    std::vector<Interval> frontier;
    frontier.push_back({0, support.size(), std::move(unresolved)});

    while (!frontier.empty()) {
        std::vector<Interval> next;
        for (auto& iv : frontier) {
            if (iv.targets.empty()) continue;
            if (iv.hi - iv.lo == 1) {
                for (Value t : iv.targets) w[static_cast<std::size_t>(t)] = support[iv.lo];
                continue;
            }
            const std::size_t mid = (iv.lo + iv.hi) / 2;
            SumSet q(SumMode::kInteger, x.bound());
            for (std::size_t k = iv.lo; k < mid; ++k) q.insert(support[k]);
            WitnessQuery probe{q, y};
            const auto sz = size_oracle(probe);
            const auto sm = sum_oracle(probe);
            Interval left{iv.lo, mid, {}}, right{mid, iv.hi, {}};
            for (Value t : iv.targets) {
                const auto i = static_cast<std::size_t>(t);
                const std::uint64_t c = i < sz.size() ? sz[i] : 0;
                if (c == 1)
                    w[i] = sm[i];
                else if (c >= 2)
                    left.targets.push_back(t);
                else
                    right.targets.push_back(t);
            }
            if (!left.targets.empty()) next.push_back(std::move(left));
            if (!right.targets.empty()) next.push_back(std::move(right));
        }
        frontier = std::move(next);
    }
    return w;
}

} // namespace sumsetkit
