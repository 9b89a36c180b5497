#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "sumsetkit/core.hpp"

namespace sumsetkit {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// CountVector
// ---------------------------------------------------------------------------

/// Subset-sum counts indexed 0..bound, either exact (arbitrary precision) or
/// as residues modulo kCountModulus.
class CountVector {
public:
    enum class Mode { kExact, kModular };

    /// ~62-bit prime with large power-of-two roots of unity; counting in
    /// modular mode happens directly in this field.
    static constexpr std::uint64_t kCountModulus = 4179340454199820289ull;

    CountVector() = default;
    CountVector(Mode mode, Value bound);
    static CountVector delta0(Mode mode, Value bound);

    Mode mode() const { return mode_; }
    Value bound() const { return bound_; }
    std::size_t size() const { return static_cast<std::size_t>(bound_) + 1; }

    bool is_exact() const { return mode_ == Mode::kExact; }

    std::uint64_t residue(Value x) const { return mod_[static_cast<std::size_t>(x)]; }
    void set_residue(Value x, std::uint64_t r) { mod_[static_cast<std::size_t>(x)] = r % kCountModulus; }
    const std::vector<std::uint64_t>& residues() const { return mod_; }

    const BigInt& exact(Value x) const { return exact_[static_cast<std::size_t>(x)]; }
    void set_exact(Value x, BigInt v) { exact_[static_cast<std::size_t>(x)] = std::move(v); }
    const std::vector<BigInt>& exacts() const { return exact_; }

    /// Positions with nonzero count.
    std::vector<Value> support() const;

    bool operator==(const CountVector&) const = default;

private:
    Mode mode_ = Mode::kModular;
    Value bound_ = 0;
    std::vector<std::uint64_t> mod_;
    std::vector<BigInt> exact_;
};

// ---------------------------------------------------------------------------
// Convolutions
// ---------------------------------------------------------------------------

/// Sumset of two integer-capped sum sets: k is a member iff a+b=k for some
/// members a, b with k <= cap. Result bound is cap.
SumSet bool_conv(const SumSet& a, const SumSet& b, Value cap);

/// Two-dimensional sumset over (sum, cardinality) pairs, truncated to
/// sum <= cap_sum and cardinality <= cap_card.
CardSumSet bool_conv_2d(const CardSumSet& a, const CardSumSet& b, Value cap_sum, int cap_card);

/// Sumset in Z_m: k is a member iff a+b = k (mod m).
SumSet cyclic_bool_conv(const SumSet& a, const SumSet& b, Value m);

/// Counting convolution: result(x) = sum_t f(t) * g(x-t) for x <= cap.
/// Modes must match. (Exactness note: the source formula is implemented as
/// the standard convolution; see count_conv's definition site.)
CountVector count_conv(const CountVector& f, const CountVector& g, Value cap);

} // namespace sumsetkit
