#include "sumsetkit/integer_engine.hpp"

#include <algorithm>
#include <cmath>

#include "engine_internal.hpp"
#include "ntt.hpp"
#include "parallel.hpp"
#include "util.hpp"

namespace sumsetkit {

namespace {

using detail::sat_add;
using detail::sat_mul;

using Elems = std::vector<TraceElement>;
using Span = detail::ElemSpan;

std::vector<Value> checked_sorted_set(std::span<const Value> set, const char* who) {
    std::vector<Value> vals(set.begin(), set.end());
    std::sort(vals.begin(), vals.end());
    for (Value v : vals)
        if (v == 0) throw ContractError(std::string(who) + ": values must be positive");
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw ContractError(std::string(who) + ": duplicate value in set input");
    return vals;
}

Elems plain_elements(const std::vector<Value>& vals) {
    Elems out;
    out.reserve(vals.size());
    for (Value v : vals) out.push_back({v, {{v, 1}}});
    return out;
}

Value sum_of(Span elems) {
    Value s = 0;
    for (const auto& e : elems) s = sat_add(s, e.value);
    return s;
}

} // namespace

namespace detail {

TraceNodePtr make_leaf(ElemSpan elems, const SumSet& sums) {
    auto node = std::make_unique<TraceNode>(TraceNode::Kind::kLeafSet);
    node->elements.assign(elems.begin(), elems.end());
    node->sums = sums;
    return node;
}

SumSet sigma_sums(ElemSpan elems, Value cap, TraceNodePtr* slot) {
    const Value bound = std::min(sum_of(elems), cap);
    if (elems.size() <= kEnumCutoff) {
        SumSet out = SumSet::zero_only(SumMode::kInteger, bound);
        const std::size_t n = elems.size();
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Value s = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) s = sat_add(s, elems[i].value);
            if (s <= bound) out.bits().set(s);
        }
        if (slot) *slot = make_leaf(elems, out);
        return out;
    }
    const std::size_t mid = (elems.size() + 1) / 2;
    SumSet l, r;
    TraceNodePtr ln, rn;
    detail::invoke_pair(
        [&] { l = sigma_sums(elems.subspan(0, mid), cap, slot ? &ln : nullptr); },
        [&] { r = sigma_sums(elems.subspan(mid), cap, slot ? &rn : nullptr); });
    SumSet out = bool_conv(l, r, bound);
    if (slot) {
        auto node = std::make_unique<TraceNode>(TraceNode::Kind::kCombine);
        node->left = std::move(ln);
        node->right = std::move(rn);
        node->sums = out;
        *slot = std::move(node);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cardinality-capped interval sums in sheared coordinates (i - x*j, j)
// ---------------------------------------------------------------------------

// width of the sheared grid: largest achievable sum of (v - x) over <= alpha
// elements; elems must be sorted ascending.
Value sheared_width(Span elems, Value xbase, Value alpha) {
    Value w = 0;
    const std::size_t take = static_cast<std::size_t>(
        std::min<Value>(alpha, static_cast<Value>(elems.size())));
    for (std::size_t i = elems.size() - take; i < elems.size(); ++i)
        w = sat_add(w, elems[i].value - xbase);
    return w;
}

// Word-parallel grid construction: one row-shifted OR pass per element.
// Same output as the transform tree; wins while n * alpha * width / 64 stays
// below the transform budget.
CardSumSet card_grid_dp(ElemSpan elems, Value base, int ae) {
    CardSumSet out(sheared_width(elems, base, static_cast<Value>(ae)), ae);
    out.insert(0, 0);
    int filled = 0;
    for (const auto& e : elems) {
        const Value v = e.value - base;
        for (int j = std::min(filled + 1, ae); j >= 1; --j)
            out.row(j).shift_or(out.row(j - 1), v);
        ++filled;
    }
    return out;
}

// Merge of two grids in their own shears: row j of each operand is lifted by
// (child base - parent base) * j before the flattened transform.
CardSumSet conv_2d_lifted(const CardSumSet& a, Value lift_a, const CardSumSet& b, Value lift_b,
                          Value cap_width, int cap_rows) {
    const Value wa = a.width() + lift_a * static_cast<Value>(a.alpha());
    const Value wb = b.width() + lift_b * static_cast<Value>(b.alpha());
    const Value stride = wa + wb + 1;
    const int rows = std::min(cap_rows, a.alpha() + b.alpha());

    const auto flatten = [&](const CardSumSet& g, Value lift) {
        const int gr = std::min(g.alpha(), rows);
        Bitvec flat(static_cast<Value>(gr) * stride + g.width() +
                    lift * static_cast<Value>(gr) + 1);
        for (int j = 0; j <= gr; ++j)
            flat.shift_or(g.row(j), static_cast<Value>(j) * stride + lift * static_cast<Value>(j));
        return flat;
    };
    const Bitvec fa = flatten(a, lift_a);
    const Bitvec fb = flatten(b, lift_b);
    const Value flat_out = fa.size() + fb.size() - 1;
    Bitvec fc(flat_out);
    fc.words() = ntt::convolve_bool_words(fa.words().data(), fa.size(), fb.words().data(),
                                          fb.size(), flat_out);
    CardSumSet out(std::min(cap_width, wa + wb), rows);
    for (int j = 0; j <= rows; ++j)
        out.row(j) = fc.extract(static_cast<Value>(j) * stride, out.width() + 1);
    return out;
}

// estimated nanoseconds; word ops vs transform butterflies
double grid_dp_cost(std::size_t n, int ae, Value width) {
    return 0.4 * static_cast<double>(n) * (ae + 1) * (static_cast<double>(width) / 64.0 + 1.0);
}
double grid_tree_cost(std::size_t n, int ae, Value width) {
    const double flat = (static_cast<double>(width) + 1.0) *
                        (std::min<double>(2.0 * ae, static_cast<double>(n)) + 1.0);
    const double lg = flat < 2 ? 1.0 : std::log2(flat);
    const double levels = std::max(1.0, std::log2(std::max(1.0, static_cast<double>(n) / 4.0)));
    return 1.5 * 3.0 * flat * lg * levels;
}

// Grid of Sigma^alpha in the node's own shear (base = smallest member).
CardSumSet card_interval_sheared(ElemSpan elems, Value alpha, TraceNodePtr* slot,
                                 GridRoute route) {
    const Value base = elems.empty() ? 0 : elems.front().value;
    const int ae = static_cast<int>(std::min<Value>(alpha, static_cast<Value>(elems.size())));
    const Value width = sheared_width(elems, base, static_cast<Value>(ae));
    const std::size_t n = elems.size();

    const bool tiny = n <= kEnumCutoff;
    const bool take_dp = route == GridRoute::kForceDp ||
                         (route == GridRoute::kAuto &&
                          grid_dp_cost(n, ae, width) <= grid_tree_cost(n, ae, width));
    if (tiny || take_dp) {
        CardSumSet out;
        if (tiny) {
            out = CardSumSet(width, ae);
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                const int j = std::popcount(mask);
                if (j > ae) continue;
                Value s = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) s += elems[i].value - base;
                out.insert(s, j);
            }
        } else {
            out = card_grid_dp(elems, base, ae);
        }
        if (slot) {
            auto node = std::make_unique<TraceNode>(TraceNode::Kind::kLeafCard);
            node->elements.assign(elems.begin(), elems.end());
            node->grid = out;
            node->shear_base = base;
            *slot = std::move(node);
        }
        return out;
    }

    const std::size_t mid = (n + 1) / 2; // value median goes left
    CardSumSet l, r;
    TraceNodePtr ln, rn;
    detail::invoke_pair(
        [&] {
            l = card_interval_sheared(elems.subspan(0, mid), alpha, slot ? &ln : nullptr, route);
        },
        [&] {
            r = card_interval_sheared(elems.subspan(mid), alpha, slot ? &rn : nullptr, route);
        });
    // left child shares the parent's base; the right child re-shears
    const Value lift_r = elems[mid].value - base;
    CardSumSet out = conv_2d_lifted(l, 0, r, lift_r, width, ae);
    if (slot) {
        auto node = std::make_unique<TraceNode>(TraceNode::Kind::kCombineCard);
        node->left = std::move(ln);
        node->right = std::move(rn);
        node->grid = out;
        node->shear_base = base;
        *slot = std::move(node);
    }
    return out;
}

SumSet zero_leaf(ElemSpan elems, SumMode mode, Value bound, TraceNodePtr* slot) {
    SumSet out = SumSet::zero_only(mode, bound);
    if (slot) *slot = make_leaf(elems, out);
    return out;
}

SumSet interval_sums_impl(ElemSpan elems, Value x, Value u, TraceNodePtr* slot) {
    if (elems.empty() || u / x == 0) return zero_leaf(elems, SumMode::kInteger, u, slot);
    const Value base = elems.front().value; // >= x, so the cap only tightens
    const Value alpha = u / base;
    if (alpha == 0) return zero_leaf(elems, SumMode::kInteger, u, slot);

    TraceNodePtr child;
    CardSumSet sheared = card_interval_sheared(elems, alpha, slot ? &child : nullptr);
    SumSet out(SumMode::kInteger, u);
    for (int j = 0; j <= sheared.alpha(); ++j) {
        const Value off = sat_mul(base, static_cast<Value>(j));
        if (off > u) break;
        out.bits().shift_or(sheared.row(j), off);
    }
    if (slot) {
        auto node = std::make_unique<TraceNode>(TraceNode::Kind::kProjectCard);
        node->left = std::move(child);
        node->sums = out;
        node->shear_base = base;
        *slot = std::move(node);
    }
    return out;
}

} // namespace detail

namespace {

using detail::card_interval_sheared;
using detail::interval_sums_impl;
using detail::make_leaf;
using detail::sheared_width;
using detail::sigma_sums;
using detail::zero_leaf;

// ---------------------------------------------------------------------------
// Layer routing: both routes produce the exact layer sums; pick by a crude
// transform-work estimate.
// ---------------------------------------------------------------------------

double log2_at_least_1(double v) { return v < 2.0 ? 1.0 : std::log2(v); }

double cost_interval_route(Span elems, Value u) {
    if (elems.empty()) return 1.0;
    const Value n = static_cast<Value>(elems.size());
    const Value base = elems.front().value;
    const Value alpha = std::min(u / base, n);
    if (alpha == 0) return 1.0;
    const Value w = detail::sheared_width(elems, base, alpha);
    const int ae = static_cast<int>(alpha);
    return std::min(detail::grid_dp_cost(elems.size(), ae, w),
                    detail::grid_tree_cost(elems.size(), ae, w));
}

double cost_sigma_route(Span elems, Value u) {
    const double sigma = static_cast<double>(sum_of(elems));
    const double n = static_cast<double>(elems.size());
    double cost = 0.0;
    double nodes = 1.0, node_sigma = sigma;
    while (nodes * detail::kEnumCutoff < n) {
        const double len = std::min(node_sigma, 2.0 * static_cast<double>(u)) + 1.0;
        cost += 4.5 * nodes * len * log2_at_least_1(len);
        nodes *= 2.0;
        node_sigma /= 2.0;
    }
    return cost + 1.0;
}

SumSet layer_sums_impl(Span elems, const Layer& layer, bool is_layer0, Value u,
                       TraceNodePtr* slot) {
    if (elems.empty()) return zero_leaf(elems, SumMode::kInteger, u, slot);
    if (is_layer0) return sigma_sums(elems, u, slot);
    if (cost_sigma_route(elems, u) < cost_interval_route(elems, u))
        return sigma_sums(elems, u, slot);
    return interval_sums_impl(elems, layer.low, u, slot);
}

// ---------------------------------------------------------------------------
// Layering pipeline
// ---------------------------------------------------------------------------

std::vector<std::pair<Value, Value>> layer_bounds(Value u, Value r0) {
    std::vector<std::pair<Value, Value>> bounds;
    bounds.push_back({1, r0});
    Value high = r0;
    for (int i = 1; high < u; ++i) {
        const Value next = sat_mul(r0, Value(1) << std::min(i, 62));
        bounds.push_back({high + 1, next});
        high = next;
    }
    return bounds;
}

SumSet layered_sums(Span elems, Value u, Value r0, TraceNodePtr* slot) {
    const auto bounds = layer_bounds(u, r0);
    const std::size_t nu = bounds.size();

    // bucket (elems sorted ascending)
    std::vector<Span> buckets(nu);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < nu; ++i) {
        std::size_t start = pos;
        while (pos < elems.size() && elems[pos].value <= bounds[i].second) ++pos;
        buckets[i] = elems.subspan(start, pos - start);
    }

    std::vector<SumSet> sums(nu);
    std::vector<TraceNodePtr> nodes(nu);
    for (std::size_t i = 0; i < nu; ++i) {
        Layer layer{bounds[i].first, bounds[i].second, {}};
        sums[i] = layer_sums_impl(buckets[i], layer, i == 0, u, slot ? &nodes[i] : nullptr);
    }

    // chain P_i = (P_{i-1} (+) T_i) ∩ [0, u], folding layer 0 in first
    std::optional<std::size_t> acc;
    SumSet result;
    TraceNodePtr acc_node;
    for (std::size_t i = 0; i < nu; ++i) {
        if (sums[i].count() <= 1) continue; // {0} is the identity
        if (!acc) {
            acc = i;
            result = std::move(sums[i]);
            acc_node = std::move(nodes[i]);
            continue;
        }
        SumSet next = bool_conv(result, sums[i], u);
        if (slot) {
            auto node = std::make_unique<TraceNode>(TraceNode::Kind::kCombine);
            node->left = std::move(acc_node);
            node->right = std::move(nodes[i]);
            node->sums = next;
            acc_node = std::move(node);
        }
        result = std::move(next);
    }
    if (!acc) return zero_leaf(elems, SumMode::kInteger, u, slot);
    if (slot) *slot = std::move(acc_node);
    return result;
}

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

SumSet dp_sums(Span elems, Value u, TraceNodePtr* slot) {
    SumSet out = SumSet::zero_only(SumMode::kInteger, u);
    for (const auto& e : elems) out.bits().shift_or(out.bits(), e.value);
    if (slot) *slot = make_leaf(elems, out);
    return out;
}

SumSet solve_set(Span elems, Value u, Strategy strategy, TraceNodePtr* slot) {
    if (elems.empty()) return zero_leaf(elems, SumMode::kInteger, u, slot);
    switch (strategy) {
        case Strategy::kSigma:
            return sigma_sums(elems, u, slot);
        case Strategy::kDp:
            return dp_sums(elems, u, slot);
        case Strategy::kR0Sqrt: {
            const Value n = static_cast<Value>(elems.size());
            const Value r0 = std::clamp<Value>(detail::floor_div_sqrt(u, n), 1, u);
            return layered_sums(elems, u, r0, slot);
        }
        case Strategy::kR0TwoThirds: {
            const Value r0 = std::clamp<Value>(detail::floor_pow_two_thirds(u), 1, u);
            return layered_sums(elems, u, r0, slot);
        }
        default:
            throw ContractError("strategy must be concrete here");
    }
}

struct Costs {
    double sqrt_route, twothirds_route, sigma_route, dp_route;
};

Costs predict_costs(std::size_t n_distinct, std::size_t n_expanded, Value sigma, Value u) {
    const double du = static_cast<double>(u);
    const double lg = log2_at_least_1(du);
    const double ds = static_cast<double>(sigma);
    Costs c;
    c.sqrt_route = std::sqrt(static_cast<double>(n_distinct)) * du * std::pow(lg, 2.5);
    c.twothirds_route = std::pow(du, 4.0 / 3.0) * lg * lg;
    c.sigma_route = ds * log2_at_least_1(ds) *
                    log2_at_least_1(static_cast<double>(n_distinct) * lg);
    c.dp_route = static_cast<double>(n_expanded) * du / 64.0;
    return c;
}

Strategy resolve_strategy(Strategy s, const MultisetInput& input, std::size_t n_expanded, Value u) {
    if (s != Strategy::kAuto && s != Strategy::kMain) return s;
    const Costs c = predict_costs(input.distinct_count(), n_expanded, input.sigma(), u);
    const Strategy layered =
        c.sqrt_route <= c.twothirds_route ? Strategy::kR0Sqrt : Strategy::kR0TwoThirds;
    if (s == Strategy::kMain) return layered;
    const double layered_cost = std::min(c.sqrt_route, c.twothirds_route);
    if (c.dp_route <= layered_cost && c.dp_route <= c.sigma_route) return Strategy::kDp;
    if (c.sigma_route <= layered_cost) return Strategy::kSigma;
    return layered;
}

} // namespace

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

SumSet all_sums_sigma(std::span<const Value> set) {
    const auto vals = checked_sorted_set(set, "all_sums_sigma");
    const Elems elems = plain_elements(vals);
    Value sigma = 0;
    for (Value v : vals) sigma = sat_add(sigma, v);
    return sigma_sums(elems, sigma, nullptr);
}

CardSumSet capped_interval_sums(std::span<const Value> set, Value x, Value len, int alpha) {
    if (alpha < 1) throw ContractError("capped_interval_sums: alpha must be >= 1");
    const auto vals = checked_sorted_set(set, "capped_interval_sums");
    for (Value v : vals)
        if (v < x || v > sat_add(x, len))
            throw ContractError("capped_interval_sums: value outside declared interval");
    const Elems elems = plain_elements(vals);
    const Value base = vals.empty() ? 0 : vals.front();
    CardSumSet sheared = card_interval_sheared(elems, static_cast<Value>(alpha), nullptr);
    // un-shear: (i, j) -> (i + base*j, j)
    Value width = 0;
    const std::size_t take = std::min<std::size_t>(vals.size(), static_cast<std::size_t>(alpha));
    for (std::size_t i = vals.size() - take; i < vals.size(); ++i) width = sat_add(width, vals[i]);
    CardSumSet out(width, sheared.alpha());
    for (int j = 0; j <= sheared.alpha(); ++j)
        out.row(j).shift_or(sheared.row(j), sat_mul(base, static_cast<Value>(j)));
    return out;
}

SumSet interval_sums(std::span<const Value> set, Value x, Value len, Value u) {
    if (x < 1) throw ContractError("interval_sums: x must be >= 1");
    const auto vals = checked_sorted_set(set, "interval_sums");
    for (Value v : vals)
        if (v < x || v > sat_add(x, len))
            throw ContractError("interval_sums: value outside declared interval");
    const Elems elems = plain_elements(vals);
    return interval_sums_impl(elems, x, u, nullptr);
}

Layering partition_geometric(std::span<const Value> set, Value u, Value r0) {
    if (r0 < 1 || r0 > u) throw ContractError("partition_geometric: need 1 <= r0 <= u");
    const auto vals = checked_sorted_set(set, "partition_geometric");
    for (Value v : vals)
        if (v > u) throw ContractError("partition_geometric: value exceeds u");
    Layering out;
    out.r0 = r0;
    out.bound = u;
    std::size_t pos = 0;
    for (const auto& [low, high] : layer_bounds(u, r0)) {
        Layer layer{low, high, {}};
        while (pos < vals.size() && vals[pos] <= high) layer.values.push_back(vals[pos++]);
        out.layers.push_back(std::move(layer));
    }
    return out;
}

std::vector<SumSet> layer_sums(const Layering& layering, Value u) {
    std::vector<SumSet> out;
    out.reserve(layering.nu());
    for (std::size_t i = 0; i < layering.nu(); ++i) {
        const Layer& layer = layering.layers[i];
        const Elems elems = plain_elements(layer.values);
        out.push_back(layer_sums_impl(elems, layer, i == 0, u, nullptr));
    }
    return out;
}

SumSet all_subset_sums(const MultisetInput& s, Value u, Strategy strategy, Trace* trace) {
    TraceNodePtr root;
    TraceNodePtr* slot = trace ? &root : nullptr;
    SumSet result;

    if (u == 0) {
        result = zero_leaf({}, SumMode::kInteger, 0, slot);
    } else {
        const Elems elems = normalize_elements(s, u);
        const Strategy concrete = resolve_strategy(strategy, s, elems.size(), u);

        // split: first copy of each value goes to P, the second to Q
        Elems p, q;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (!p.empty() && p.back().value == elems[i].value)
                q.push_back(elems[i]);
            else
                p.push_back(elems[i]);
        }

        SumSet sp, sq;
        TraceNodePtr pn, qn;
        detail::invoke_pair(
            [&] { sp = solve_set(p, u, concrete, slot ? &pn : nullptr); },
            [&] { sq = solve_set(q, u, concrete, slot ? &qn : nullptr); });
        result = bool_conv(sp, sq, u);
        if (slot) {
            auto node = std::make_unique<TraceNode>(TraceNode::Kind::kCombine);
            node->left = std::move(pn);
            node->right = std::move(qn);
            node->sums = result;
            *slot = std::move(node);
        }
    }

    if (trace) {
        trace->root = std::move(root);
        trace->mode = SumMode::kInteger;
    }
    return result;
}

Strategy parse_strategy(std::string_view name) {
    if (name == "auto") return Strategy::kAuto;
    if (name == "sigma") return Strategy::kSigma;
    if (name == "r0-sqrt") return Strategy::kR0Sqrt;
    if (name == "r0-twothirds") return Strategy::kR0TwoThirds;
    if (name == "dp") return Strategy::kDp;
    if (name == "main") return Strategy::kMain;
    throw ContractError("unknown algorithm name: " + std::string(name));
}

} // namespace sumsetkit
