#include "sumsetkit/cyclic_engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "engine_internal.hpp"
#include "parallel.hpp"
#include "util.hpp"

namespace sumsetkit {

namespace {

using detail::ElemSpan;
using Elems = std::vector<TraceElement>;

Value mulmod(Value a, Value b, Value m) {
    return static_cast<Value>((unsigned __int128)a * b % m);
}

Value gcd_u64(Value a, Value b) { return std::gcd(a, b); }

} // namespace

std::vector<Value> Segment::expand() const {
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(length));
    Value cur = 0;
    for (Value i = 1; i <= length; ++i) {
        cur += generator;
        if (cur >= modulus) cur -= modulus;
        out.push_back(cur);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Segment::contains(Value residue) const {
    if (modulus == 1) return residue == 0;
    if (gcd_u64(generator % modulus, modulus) != 1) {
        const auto all = expand();
        return std::binary_search(all.begin(), all.end(), residue % modulus);
    }
    const Value i = mulmod(residue % modulus, mod_inverse(generator, modulus), modulus);
    return i >= 1 && i <= length;
}

FactorTable factorize(Value m) {
    if (m < 1) throw ContractError("factorize: modulus must be >= 1");
    FactorTable t;
    t.modulus = m;
    Value rest = m;
    for (Value q = 2; (unsigned __int128)q * q <= rest; q += (q == 2 ? 1 : 2)) {
        if (rest % q) continue;
        int r = 0;
        while (rest % q == 0) {
            rest /= q;
            ++r;
        }
        t.factors.push_back({q, r});
    }
    if (rest > 1) t.factors.push_back({rest, 1});

    t.sigma0 = 1;
    t.sigma1 = 1;
    t.phi = m;
    for (const auto& [q, r] : t.factors) {
        t.sigma0 *= static_cast<Value>(r) + 1;
        Value geom = 1, pw = 1;
        for (int i = 0; i < r; ++i) {
            pw *= q;
            geom += pw;
        }
        t.sigma1 *= geom;
        t.phi = t.phi / q * (q - 1);
    }
    return t;
}

std::vector<Value> FactorTable::divisors() const {
    std::vector<Value> out{1};
    for (const auto& [q, r] : factors) {
        const std::size_t base = out.size();
        Value pw = 1;
        for (int i = 0; i < r; ++i) {
            pw *= q;
            for (std::size_t k = 0; k < base; ++k) out.push_back(out[k] * pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Value mod_inverse(Value x, Value m) {
    if (m < 1) throw ContractError("mod_inverse: modulus must be >= 1");
    if (m == 1) return 0;
    // extended Euclid on (x mod m, m)
    std::int64_t r0 = static_cast<std::int64_t>(x % m), r1 = static_cast<std::int64_t>(m);
    std::int64_t s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t k = r0 / r1;
        r0 -= k * r1;
        std::swap(r0, r1);
        s0 -= k * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw ContractError("mod_inverse: element is not a unit");
    s0 %= static_cast<std::int64_t>(m);
    if (s0 < 0) s0 += static_cast<std::int64_t>(m);
    return static_cast<Value>(s0);
}

// ---------------------------------------------------------------------------
// segment_sums
// ---------------------------------------------------------------------------

namespace {

SumSet segment_sums_impl(ElemSpan elems, const Segment& seg, TraceNodePtr* slot) {
    const Value m = seg.modulus;
    if (m == 1 || elems.empty()) {
        SumSet out = SumSet::zero_only(SumMode::kCyclic, m - 1);
        if (slot) *slot = detail::make_leaf(elems, out);
        return out;
    }
    if (gcd_u64(seg.generator % m, m) != 1)
        throw ContractError("segment_sums: generator must be a unit");
    const Value inv = mod_inverse(seg.generator, m);

    Elems mapped;
    mapped.reserve(elems.size());
    for (const auto& e : elems) {
        if (e.value >= m) throw ContractError("segment_sums: residue out of range");
        const Value i = mulmod(e.value, inv, m);
        if (i < 1 || i > seg.length)
            throw ContractError("segment_sums: element outside the segment");
        mapped.push_back({i, e.source});
    }
    std::sort(mapped.begin(), mapped.end(),
              [](const TraceElement& a, const TraceElement& b) { return a.value < b.value; });

    TraceNodePtr child;
    Value sigma = 0;
    for (const auto& e : mapped) sigma = detail::sat_add(sigma, e.value);
    const SumSet ints = detail::sigma_sums(mapped, sigma, slot ? &child : nullptr);

    SumSet out(SumMode::kCyclic, m - 1);
    for (Value v : ints.members()) out.bits().set(mulmod(v % m, seg.generator % m, m));
    if (slot) {
        auto node = std::make_unique<TraceNode>(TraceNode::Kind::kSegmentMap);
        node->left = std::move(child);
        node->sums = out;
        node->map_mult = seg.generator % m;
        node->modulus = m;
        *slot = std::move(node);
    }
    return out;
}

} // namespace

SumSet segment_sums(std::span<const Value> s, const Segment& seg) {
    Elems elems;
    for (Value v : s) elems.push_back({v, {{v, 1}}});
    return segment_sums_impl(elems, seg, nullptr);
}

// ---------------------------------------------------------------------------
// cover_units
// ---------------------------------------------------------------------------

std::vector<Segment> cover_units(std::span<const Value> s, Value len, Value m) {
    if (m < 1) throw ContractError("cover_units: modulus must be >= 1");
    if (len < 1) throw ContractError("cover_units: length must be >= 1");
    len = std::min(len, m);
    if (s.empty()) return {};
    if (m == 1) return {Segment{0, len, 1}};

    std::vector<Value> todo(s.begin(), s.end());
    std::sort(todo.begin(), todo.end());
    if (std::adjacent_find(todo.begin(), todo.end()) != todo.end())
        throw ContractError("cover_units: duplicate element");
    for (Value b : todo)
        if (b >= m || gcd_u64(b, m) != 1)
            throw ContractError("cover_units: element is not a unit of Z_m");

    // b lies in seg(x, len) iff x = i^-1 * b for some unit i <= len
    std::map<Value, std::vector<Value>> covers; // generator -> elements covered
    for (Value i = 1; i <= len; ++i) {
        if (gcd_u64(i % m, m) != 1) continue;
        const Value inv = mod_inverse(i % m, m);
        for (Value b : todo) covers[mulmod(inv, b, m)].push_back(b);
    }

    // lazy greedy maximum coverage; ties go to the smallest generator
    using Cand = std::pair<std::uint64_t, Value>; // (coverage, generator)
    const auto cmp = [](const Cand& a, const Cand& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    };
    std::priority_queue<Cand, std::vector<Cand>, decltype(cmp)> heap(cmp);
    for (const auto& [x, list] : covers) heap.push({list.size(), x});

    std::vector<bool> done(todo.size(), false);
    auto index_of = [&](Value b) {
        return static_cast<std::size_t>(
            std::lower_bound(todo.begin(), todo.end(), b) - todo.begin());
    };
    std::size_t remaining = todo.size();
    std::vector<Segment> out;
    while (remaining > 0) {
        auto [claimed, x] = heap.top();
        heap.pop();
        std::uint64_t actual = 0;
        for (Value b : covers[x])
            if (!done[index_of(b)]) ++actual;
        if (actual != claimed) {
            if (actual > 0) heap.push({actual, x});
            continue;
        }
        out.push_back(Segment{x, len, m});
        for (Value b : covers[x]) {
            const std::size_t idx = index_of(b);
            if (!done[idx]) {
                done[idx] = true;
                --remaining;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// unit_sums
// ---------------------------------------------------------------------------

namespace {

SumSet full_group(Value m) {
    SumSet out(SumMode::kCyclic, m - 1);
    out.bits().set_all();
    return out;
}

SumSet combine_cyclic(SumSet acc, TraceNodePtr acc_node, const SumSet& next,
                      TraceNodePtr next_node, Value lift, Value m, TraceNodePtr* slot,
                      SumSet* lifted_out = nullptr) {
    SumSet lifted(SumMode::kCyclic, m - 1);
    if (lift == 1) {
        lifted = std::move(acc);
    } else {
        for (Value a : acc.members()) {
            const Value la = lift * a; // < m by construction, no wraparound
            lifted.bits().set(la);
        }
    }
    SumSet out = cyclic_bool_conv(lifted, next, m);
    if (slot) {
        auto node = std::make_unique<TraceNode>(TraceNode::Kind::kCombineCyclic);
        node->left = std::move(acc_node);
        node->right = std::move(next_node);
        node->sums = out;
        node->lift = lift;
        node->modulus = m;
        *slot = std::move(node);
    }
    if (lifted_out) *lifted_out = std::move(lifted);
    return out;
}

SumSet unit_sums_impl(ElemSpan elems, Value m, TraceNodePtr* slot) {
    if (m == 1 || elems.empty())
        return detail::zero_leaf(elems, SumMode::kCyclic, m - 1, slot);
    for (const auto& e : elems)
        if (e.value >= m || gcd_u64(e.value, m) != 1)
            throw ContractError("unit_sums: element is not a unit of Z_m");

    const Value n = static_cast<Value>(elems.size());
    // |S| >= 2*sqrt(m) makes the sum set the whole group. Traced runs take
    // the cover path instead so targets stay reconstructible.
    if (!slot && (unsigned __int128)n * n >= 4 * (unsigned __int128)m)
        return full_group(m);

    Value len = std::max(detail::ceil_sqrt(m), detail::ceil_div_sqrt(m, n));
    len = std::min(len, m);

    std::vector<Value> values;
    values.reserve(elems.size());
    for (const auto& e : elems) values.push_back(e.value);
    const std::vector<Segment> segs = cover_units(values, len, m);

    // each element goes to exactly one covering segment (the first)
    std::vector<Elems> groups(segs.size());
    for (const auto& e : elems) {
        bool placed = false;
        for (std::size_t k = 0; k < segs.size() && !placed; ++k) {
            if (segs[k].contains(e.value)) {
                groups[k].push_back(e);
                placed = true;
            }
        }
        if (!placed) throw ContractError("unit_sums: cover misses an element");
    }

    SumSet acc;
    TraceNodePtr acc_node;
    bool first = true;
    for (std::size_t k = 0; k < segs.size(); ++k) {
        TraceNodePtr seg_node;
        SumSet part = segment_sums_impl(groups[k], segs[k], slot ? &seg_node : nullptr);
        if (first) {
            acc = std::move(part);
            acc_node = std::move(seg_node);
            first = false;
            continue;
        }
        TraceNodePtr merged;
        acc = combine_cyclic(std::move(acc), std::move(acc_node), part, std::move(seg_node),
                             1, m, slot ? &merged : nullptr);
        acc_node = std::move(merged);
    }
    if (slot) *slot = std::move(acc_node);
    return acc;
}

} // namespace

SumSet unit_sums(std::span<const Value> s, Value m, Trace* trace) {
    if (m < 1) throw ContractError("unit_sums: modulus must be >= 1");
    std::vector<Value> vals(s.begin(), s.end());
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw ContractError("unit_sums: duplicate element");
    Elems elems;
    for (Value v : vals) elems.push_back({v, {{v, 1}}});
    TraceNodePtr root;
    SumSet out = unit_sums_impl(elems, m, trace ? &root : nullptr);
    if (trace) {
        trace->root = std::move(root);
        trace->mode = SumMode::kCyclic;
    }
    return out;
}

// ---------------------------------------------------------------------------
// mod_subset_sums: recursion over the prime factorization of m
// ---------------------------------------------------------------------------

namespace {

Value smallest_prime_factor(Value tau) {
    for (Value q = 2; (unsigned __int128)q * q <= tau; q += (q == 2 ? 1 : 2))
        if (tau % q == 0) return q;
    return tau;
}

SumSet mod_recurse(const Elems& gamma, Value mu, Value tau, TraceNodePtr* slot,
                   std::vector<Value>* leaf_moduli) {
    if (tau == 1) {
        if (leaf_moduli) leaf_moduli->push_back(mu);
        for (const auto& e : gamma)
            if (gcd_u64(e.value, mu) != 1)
                throw ContractError("mod_subset_sums: non-unit survived the sieve");
        return unit_sums_impl(gamma, mu, slot);
    }
    const Value q = smallest_prime_factor(tau);
    Value tau_rest = tau;
    while (tau_rest % q == 0) tau_rest /= q;

    Elems div_q, rem_q;
    for (const auto& e : gamma) {
        if (e.value % q == 0)
            div_q.push_back({e.value / q, e.source});
        else
            rem_q.push_back(e);
    }

    // (Gamma/q, mu/q, tau/q) keeps pivot q while it divides tau; the %q side
    // would only re-split into an empty set, so it skips ahead to tau / q^r.
    SumSet a, b;
    TraceNodePtr an, bn;
    detail::invoke_pair(
        [&] { a = mod_recurse(div_q, mu / q, tau / q, slot ? &an : nullptr, leaf_moduli); },
        [&] { b = mod_recurse(rem_q, mu, tau_rest, slot ? &bn : nullptr, leaf_moduli); });
    return combine_cyclic(std::move(a), std::move(an), b, std::move(bn), q, mu, slot);
}

} // namespace

SumSet mod_subset_sums(std::span<const Value> s, Value m, Trace* trace,
                       std::vector<Value>* leaf_moduli) {
    if (m < 1) throw ContractError("mod_subset_sums: modulus must be >= 1");
    std::vector<Value> vals(s.begin(), s.end());
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw ContractError("mod_subset_sums: duplicate residue");
    for (Value v : vals)
        if (v >= m) throw ContractError("mod_subset_sums: residue out of range");

    Elems gamma;
    for (Value v : vals)
        if (v != 0) gamma.push_back({v, {{v, 1}}}); // zeros contribute nothing

    TraceNodePtr root;
    SumSet out = mod_recurse(gamma, m, m, trace ? &root : nullptr, leaf_moduli);
    if (trace) {
        trace->root = std::move(root);
        trace->mode = SumMode::kCyclic;
    }
    return out;
}

// ---------------------------------------------------------------------------
// cover_zm
// ---------------------------------------------------------------------------

ZmCover cover_zm(Value m, Value len) {
    if (m < 1) throw ContractError("cover_zm: modulus must be >= 1");
    if (len < 1 || len > m) throw ContractError("cover_zm: need 1 <= len <= m");

    ZmCover out;
    const FactorTable table = factorize(m);
    for (Value d : table.divisors()) {
        if (d == 1) continue; // the residue-0 class stays a marker
        const Value lift = m / d;
        if (d <= len) {
            out.segments.push_back(Segment{lift % m, len, m});
            continue;
        }
        std::vector<Value> units;
        for (Value y = 1; y < d; ++y)
            if (gcd_u64(y, d) == 1) units.push_back(y);
        for (const Segment& seg : cover_units(units, len, d))
            out.segments.push_back(Segment{mulmod(seg.generator, lift, m), len, m});
    }
    return out;
}

} // namespace sumsetkit
