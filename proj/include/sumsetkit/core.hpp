#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumsetkit/bitvec.hpp"

namespace sumsetkit {

using Value = std::uint64_t;

/// Input values and bounds must fit in 63 bits so sums index bit vectors.
inline constexpr Value kMaxValue = (Value(1) << 63) - 1;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnrealizableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// MultisetInput
// ---------------------------------------------------------------------------

struct MultisetEntry {
    Value value = 0;
    std::uint64_t multiplicity = 0;
    bool operator==(const MultisetEntry&) const = default;
};

/// Validated multiset of positive integers. Entries are canonical: distinct
/// values, ascending, multiplicities >= 1.
class MultisetInput {
public:
    MultisetInput() = default;
    static MultisetInput from_entries(std::vector<MultisetEntry> entries);
    static MultisetInput from_values(std::span<const Value> values);

    const std::vector<MultisetEntry>& entries() const { return entries_; }
    std::uint64_t cardinality() const { return cardinality_; }        // n
    std::size_t distinct_count() const { return entries_.size(); }    // n'
    Value sigma() const { return sigma_; }                            // saturating
    bool empty() const { return entries_.empty(); }

    bool operator==(const MultisetInput&) const = default;

private:
    std::vector<MultisetEntry> entries_;
    std::uint64_t cardinality_ = 0;
    Value sigma_ = 0;
};

/// Whitespace-separated decimal positive integers; repetition encodes
/// multiplicity. Rejects empty input, non-numeric tokens, zeros, negatives
/// and values above 63 bits, naming the offending token.
MultisetInput parse_multiset(std::string_view text);

// ---------------------------------------------------------------------------
// SumSet
// ---------------------------------------------------------------------------

enum class SumMode { kInteger, kCyclic };

/// Membership bit vector over [0, bound]. In cyclic mode bound is m-1 and
/// indices are residues.
class SumSet {
public:
    SumSet() = default;
    SumSet(SumMode mode, Value bound);

    /// The sum set of the empty collection: {0}.
    static SumSet zero_only(SumMode mode, Value bound);
    static SumSet of(SumMode mode, Value bound, std::initializer_list<Value> vals);

    SumMode mode() const { return mode_; }
    Value bound() const { return bound_; }
    Value modulus() const { return bound_ + 1; } // cyclic mode only

    bool contains(Value v) const { return v <= bound_ && bits_.test(v); }
    void insert(Value v);
    std::uint64_t count() const { return bits_.popcount(); }
    std::vector<Value> members() const { return bits_.members(); }

    const Bitvec& bits() const { return bits_; }
    Bitvec& bits() { return bits_; }

    bool operator==(const SumSet&) const = default;

private:
    SumMode mode_ = SumMode::kInteger;
    Value bound_ = 0;
    Bitvec bits_{1};
};

// ---------------------------------------------------------------------------
// CardSumSet
// ---------------------------------------------------------------------------

/// Bit grid over (sum, cardinality) pairs: sum in [0, width], cardinality in
/// [0, alpha].
class CardSumSet {
public:
    CardSumSet() : CardSumSet(0, 0) {}
    CardSumSet(Value width, int alpha);

    Value width() const { return width_; }
    int alpha() const { return alpha_; }

    bool contains(Value s, int j) const {
        return j >= 0 && j <= alpha_ && s <= width_ && rows_[static_cast<std::size_t>(j)].test(s);
    }
    void insert(Value s, int j);

    const Bitvec& row(int j) const { return rows_[static_cast<std::size_t>(j)]; }
    Bitvec& row(int j) { return rows_[static_cast<std::size_t>(j)]; }

    /// All member cells, sorted by (sum, cardinality).
    std::vector<std::pair<Value, int>> cells() const;

    bool operator==(const CardSumSet&) const = default;

private:
    Value width_ = 0;
    int alpha_ = 0;
    std::vector<Bitvec> rows_;
};

// ---------------------------------------------------------------------------
// Layering
// ---------------------------------------------------------------------------

struct Layer {
    Value low = 0, high = 0;         // value interval [low, high]
    std::vector<Value> values;       // members, ascending
};

/// Geometric partition of [1, u]: layer 0 covers [1, r0], layer i covers
/// [r_{i-1}+1, r_i] with r_i = floor(2^i * r0).
struct Layering {
    Value r0 = 0;
    Value bound = 0; // the u the layering was built for
    std::vector<Layer> layers;
    std::size_t nu() const { return layers.size(); }
};

// ---------------------------------------------------------------------------
// Normalization (multiset -> low-multiplicity multiset with equal sum set)
// ---------------------------------------------------------------------------

/// One copy of a normalized element together with the original input copies
/// it aggregates (value, count) -- doubling merges two packets into one.
struct NormalizedElement {
    Value value = 0;
    std::vector<std::pair<Value, std::uint64_t>> source;
};

/// The sparsify loop with per-copy provenance: every returned copy is an
/// aggregation of distinct original copies, and copies never share sources.
/// Elements above u are dropped; every value appears at most twice.
std::vector<NormalizedElement> normalize_elements(const MultisetInput& s, Value u);

/// Multiset view of normalize_elements: sum sets capped at u are preserved,
/// multiplicities are at most 2, |T| = O(n' log u).
MultisetInput normalize_multiset(const MultisetInput& s, Value u);

/// Partition a multiplicity-<=2 multiset into two duplicate-free sets;
/// doubles contribute one copy to each side.
std::pair<std::vector<Value>, std::vector<Value>> split_into_two_sets(const MultisetInput& t);

} // namespace sumsetkit
