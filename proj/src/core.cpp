#include "sumsetkit/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace sumsetkit {

namespace {

Value sat_add(Value a, Value b) {
    Value r;
    return __builtin_add_overflow(a, b, &r) ? ~Value(0) : r;
}

Value sat_mul(Value a, Value b) {
    Value r;
    return __builtin_mul_overflow(a, b, &r) ? ~Value(0) : r;
}

// Guards bit-vector allocations so absurd bounds fail with a clear message
// instead of std::bad_alloc deep inside a transform.
constexpr Value kMaxBits = Value(1) << 34; // 2 GiB of bits

} // namespace

MultisetInput MultisetInput::from_entries(std::vector<MultisetEntry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const MultisetEntry& a, const MultisetEntry& b) { return a.value < b.value; });
    MultisetInput out;
    for (const auto& e : entries) {
        if (e.value == 0)
            throw ContractError("multiset value must be positive");
        if (e.value > kMaxValue)
            throw ContractError("multiset value exceeds 63 bits");
        if (e.multiplicity == 0)
            throw ContractError("multiset multiplicity must be positive");
        if (!out.entries_.empty() && out.entries_.back().value == e.value)
            out.entries_.back().multiplicity += e.multiplicity;
        else
            out.entries_.push_back(e);
    }
    for (const auto& e : out.entries_) {
        out.cardinality_ = sat_add(out.cardinality_, e.multiplicity);
        out.sigma_ = sat_add(out.sigma_, sat_mul(e.value, e.multiplicity));
    }
    return out;
}

MultisetInput MultisetInput::from_values(std::span<const Value> values) {
    std::vector<MultisetEntry> entries;
    entries.reserve(values.size());
    for (Value v : values) entries.push_back({v, 1});
    return from_entries(std::move(entries));
}

MultisetInput parse_multiset(std::string_view text) {
    std::vector<MultisetEntry> entries;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        const std::string tok(text.substr(i, j - i));
        i = j;

        Value v = 0;
        bool ok = !tok.empty();
        for (char c : tok) {
            if (c < '0' || c > '9') {
                ok = false;
                break;
            }
            if (__builtin_mul_overflow(v, Value(10), &v) ||
                __builtin_add_overflow(v, Value(c - '0'), &v)) {
                throw ParseError("parse error: value out of range: \"" + tok + "\"");
            }
        }
        if (!ok) throw ParseError("parse error: not a positive integer: \"" + tok + "\"");
        if (v == 0) throw ParseError("parse error: zero is not allowed: \"" + tok + "\"");
        if (v > kMaxValue)
            throw ParseError("parse error: value exceeds 63 bits: \"" + tok + "\"");
        entries.push_back({v, 1});
    }
    if (entries.empty()) throw ParseError("parse error: empty input");
    return MultisetInput::from_entries(std::move(entries));
}

SumSet::SumSet(SumMode mode, Value bound) : mode_(mode), bound_(bound) {
    if (bound >= kMaxBits)
        throw ContractError("sum set bound too large to materialize");
    bits_ = Bitvec(bound + 1);
}

SumSet SumSet::zero_only(SumMode mode, Value bound) {
    SumSet s(mode, bound);
    s.bits_.set(0);
    return s;
}

SumSet SumSet::of(SumMode mode, Value bound, std::initializer_list<Value> vals) {
    SumSet s(mode, bound);
    for (Value v : vals) s.insert(v);
    return s;
}

void SumSet::insert(Value v) {
    if (v > bound_) throw ContractError("sum set member exceeds bound");
    bits_.set(v);
}

CardSumSet::CardSumSet(Value width, int alpha) : width_(width), alpha_(alpha) {
    if (alpha < 0) throw ContractError("cardinality cap must be non-negative");
    const Value cells = sat_mul(width + 1, static_cast<Value>(alpha) + 1);
    if (cells >= kMaxBits)
        throw ContractError("cardinality grid too large to materialize");
    rows_.assign(static_cast<std::size_t>(alpha) + 1, Bitvec(width + 1));
}

void CardSumSet::insert(Value s, int j) {
    if (j < 0 || j > alpha_ || s > width_)
        throw ContractError("cardinality grid cell out of range");
    rows_[static_cast<std::size_t>(j)].set(s);
}

std::vector<std::pair<Value, int>> CardSumSet::cells() const {
    std::vector<std::pair<Value, int>> out;
    for (int j = 0; j <= alpha_; ++j)
        for (Value s : rows_[static_cast<std::size_t>(j)].members())
            out.push_back({s, j});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<NormalizedElement> normalize_elements(const MultisetInput& s, Value u) {
    if (u < 1) throw ContractError("normalization bound must be >= 1");

    using Packet = std::vector<std::pair<Value, std::uint64_t>>;
    // Working multiset keyed by value; each copy is a packet of original
    // copies. The ordered map doubles as the extraction heap.
    std::map<Value, std::vector<Packet>> work;
    for (const auto& e : s.entries()) {
        if (e.value > u) continue; // cannot join any sum <= u
        auto& packs = work[e.value];
        packs.reserve(e.multiplicity);
        for (std::uint64_t k = 0; k < e.multiplicity; ++k)
            packs.push_back({{e.value, 1}});
    }

    std::vector<NormalizedElement> out;
    while (!work.empty()) {
        auto it = work.begin();
        const Value x = it->first;
        std::vector<Packet> packs = std::move(it->second);
        work.erase(it);
        if (x > u) break; // min exceeds u: everything remaining does too

        if (packs.size() <= 2) {
            for (auto& p : packs) out.push_back({x, std::move(p)});
            continue;
        }
        // mu > 2: one copy moves to the output, floor((mu-1)/2) pairs fold
        // into value 2x, and the leftover copy (mu even) follows to the
        // output as well -- it would be re-extracted as the minimum anyway.
        const std::uint64_t mu = packs.size();
        const std::uint64_t m2 = (mu - 1) / 2;
        out.push_back({x, std::move(packs.back())});
        packs.pop_back();
        auto& doubled = work[sat_mul(x, 2)];
        for (std::uint64_t k = 0; k < m2; ++k) {
            Packet merged = std::move(packs.back());
            packs.pop_back();
            Packet& other = packs.back();
            merged.insert(merged.end(), other.begin(), other.end());
            packs.pop_back();
            // canonical source order: ascending by value
            std::sort(merged.begin(), merged.end());
            doubled.push_back(std::move(merged));
        }
        if (!packs.empty()) out.push_back({x, std::move(packs.front())});
        if (doubled.empty()) work.erase(sat_mul(x, 2));
    }
    return out;
}

MultisetInput normalize_multiset(const MultisetInput& s, Value u) {
    std::vector<MultisetEntry> entries;
    for (const auto& e : normalize_elements(s, u)) entries.push_back({e.value, 1});
    return MultisetInput::from_entries(std::move(entries));
}

std::pair<std::vector<Value>, std::vector<Value>> split_into_two_sets(const MultisetInput& t) {
    std::vector<Value> p, q;
    for (const auto& e : t.entries()) {
        if (e.multiplicity > 2)
            throw ContractError("split requires multiplicities <= 2");
        p.push_back(e.value);
        if (e.multiplicity == 2) q.push_back(e.value);
    }
    return {std::move(p), std::move(q)};
}

} // namespace sumsetkit
