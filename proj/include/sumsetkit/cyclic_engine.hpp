#pragma once

#include "sumsetkit/core.hpp"
#include "sumsetkit/witness.hpp"

namespace sumsetkit {

/// Arithmetic progression {x, 2x, ..., l*x} mod m.
struct Segment {
    Value generator = 0;
    Value length = 0;
    Value modulus = 0;

    std::vector<Value> expand() const;
    bool contains(Value residue) const;
};

/// Prime factorization of the modulus with the divisor statistics the cover
/// bounds are phrased in.
struct FactorTable {
    Value modulus = 0;
    std::vector<std::pair<Value, int>> factors; // (prime, exponent), primes ascending
    Value sigma0 = 0;                           // number of divisors
    Value sigma1 = 0;                           // sum of divisors
    Value phi = 0;                              // Euler totient

    std::vector<Value> divisors() const; // ascending
};

FactorTable factorize(Value m);

/// x^-1 mod m via extended Euclid; requires gcd(x, m) = 1.
Value mod_inverse(Value x, Value m);

/// Recursion instance of the sieve over the prime factors of the modulus.
struct ModInstance {
    std::vector<Value> gamma; // residues in [0, mu)
    Value mu = 1;             // current modulus
    Value tau = 1;            // auxiliary parameter, divides mu
};

/// Sum set of s ⊆ seg(x, l) mod m, via division by x, integer sums, and
/// multiplication back.
SumSet segment_sums(std::span<const Value> s, const Segment& seg);

/// Greedy maximum-coverage segment cover of a unit subset; every returned
/// segment has a unit generator and length len.
std::vector<Segment> cover_units(std::span<const Value> s, Value len, Value m);

/// Sum set of a set of units of Z_m.
SumSet unit_sums(std::span<const Value> s, Value m, Trace* trace = nullptr);

/// Sum set of any subset of Z_m. Zeros are stripped; duplicate residues are
/// rejected. leaf_moduli, when given, collects the modulus at every
/// recursion leaf (diagnostics; they are exactly the divisors of m).
SumSet mod_subset_sums(std::span<const Value> s, Value m, Trace* trace = nullptr,
                       std::vector<Value>* leaf_moduli = nullptr);

/// Segments of length len covering all of Z_m except the residue 0, which is
/// the degenerate divisor class and stays an implicit marker.
struct ZmCover {
    std::vector<Segment> segments;
};

ZmCover cover_zm(Value m, Value len);

} // namespace sumsetkit
