#include "sumsetkit/baselines.hpp"

#include <algorithm>

namespace sumsetkit {
namespace baselines {

namespace {

std::vector<Value> expand(const MultisetInput& s, std::uint64_t guard) {
    if (s.cardinality() > guard)
        throw ContractError("expanded cardinality exceeds oracle guard");
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(s.cardinality()));
    for (const auto& e : s.entries())
        for (std::uint64_t k = 0; k < e.multiplicity; ++k) out.push_back(e.value);
    return out;
}

} // namespace

SumSet bellman_dp(const MultisetInput& s, Value u) {
    SumSet out = SumSet::zero_only(SumMode::kInteger, u);
    if (u == 0) return out;
    const MultisetInput t = normalize_multiset(s, u);
    for (const auto& e : t.entries())
        for (std::uint64_t k = 0; k < e.multiplicity; ++k)
            out.bits().shift_or(out.bits(), e.value);
    return out;
}

SumSet brute_force(const MultisetInput& s, Value u) {
    const auto vals = expand(s, 24);
    SumSet out = SumSet::zero_only(SumMode::kInteger, u);
    const std::size_t n = vals.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        Value sum = 0;
        bool over = false;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) {
                sum += vals[i];
                if (sum > u) {
                    over = true;
                    break;
                }
            }
        if (!over) out.insert(sum);
    }
    return out;
}

SumSet brute_force_mod(std::span<const Value> values, Value m) {
    if (m < 1) throw ContractError("modulus must be >= 1");
    if (values.size() > 24) throw ContractError("expanded cardinality exceeds oracle guard");
    SumSet out = SumSet::zero_only(SumMode::kCyclic, m - 1);
    const std::size_t n = values.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        Value sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) sum = (sum + values[i] % m) % m;
        out.insert(sum);
    }
    return out;
}

SumSet brute_force_mod(const MultisetInput& s, Value m) {
    const auto vals = expand(s, 24);
    return brute_force_mod(vals, m);
}

CardSumSet card_dp(std::span<const Value> set, Value u) {
    std::vector<Value> vals(set.begin(), set.end());
    std::sort(vals.begin(), vals.end());
    if (std::adjacent_find(vals.begin(), vals.end()) != vals.end())
        throw ContractError("card_dp requires a duplicate-free set");

    const int n = static_cast<int>(vals.size());
    CardSumSet d(u, n);
    d.insert(0, 0);
    // D[i,j,k] over k rolled: row j holds sums reachable with j elements.
    for (int k = 0; k < n; ++k) {
        const Value v = vals[static_cast<std::size_t>(k)];
        for (int j = std::min(k + 1, n); j >= 1; --j)
            d.row(j).shift_or(d.row(j - 1), v);
    }
    return d;
}

} // namespace baselines
} // namespace sumsetkit
