#include "sumsetkit/convolution.hpp"

#include <algorithm>
#include <bit>

#include "ntt.hpp"

namespace sumsetkit {

namespace {

Bitvec conv_bits(const Bitvec& a, const Bitvec& b, Value out_len) {
    Bitvec out(out_len);
    out.words() = ntt::convolve_bool_words(a.words().data(), a.size(),
                                           b.words().data(), b.size(), out_len);
    return out;
}

} // namespace

CountVector::CountVector(Mode mode, Value bound) : mode_(mode), bound_(bound) {
    if (mode == Mode::kExact)
        exact_.assign(size(), BigInt(0));
    else
        mod_.assign(size(), 0);
}

CountVector CountVector::delta0(Mode mode, Value bound) {
    CountVector v(mode, bound);
    if (mode == Mode::kExact)
        v.exact_[0] = 1;
    else
        v.mod_[0] = 1;
    return v;
}

std::vector<Value> CountVector::support() const {
    std::vector<Value> out;
    for (Value x = 0; x <= bound_; ++x) {
        const bool nz = is_exact() ? exact_[static_cast<std::size_t>(x)] != 0
                                   : mod_[static_cast<std::size_t>(x)] != 0;
        if (nz) out.push_back(x);
    }
    return out;
}

SumSet bool_conv(const SumSet& a, const SumSet& b, Value cap) {
    if (a.mode() != SumMode::kInteger || b.mode() != SumMode::kInteger)
        throw ContractError("bool_conv requires integer-capped operands");
    SumSet out(SumMode::kInteger, cap);
    out.bits() = conv_bits(a.bits(), b.bits(), cap + 1);
    return out;
}

SumSet cyclic_bool_conv(const SumSet& a, const SumSet& b, Value m) {
    if (m < 1) throw ContractError("cyclic convolution needs modulus >= 1");
    if (a.mode() != SumMode::kCyclic || b.mode() != SumMode::kCyclic ||
        a.bound() != m - 1 || b.bound() != m - 1)
        throw ContractError("cyclic_bool_conv requires cyclic operands with bound m-1");
    // full-length convolution, then fold positions >= m back by m
    Bitvec full = conv_bits(a.bits(), b.bits(), m == 1 ? 1 : 2 * m - 1);
    SumSet out(SumMode::kCyclic, m - 1);
    Bitvec& bits = out.bits();
    bits.shift_or(full, 0);
    if (m > 1) bits.shift_or(full.extract(m, m - 1), 0);
    return out;
}

CardSumSet bool_conv_2d(const CardSumSet& a, const CardSumSet& b, Value cap_sum, int cap_card) {
    // Flatten (s, j) to s + j*stride; the stride exceeds any achievable row
    // sum, so rows cannot carry into each other.
    const Value stride = a.width() + b.width() + 1;
    const int rows = a.alpha() + b.alpha() + 1;
    const Value flat_a = static_cast<Value>(a.alpha()) * stride + a.width() + 1;
    const Value flat_b = static_cast<Value>(b.alpha()) * stride + b.width() + 1;
    Bitvec fa(flat_a), fb(flat_b);
    for (int j = 0; j <= a.alpha(); ++j) fa.shift_or(a.row(j), static_cast<Value>(j) * stride);
    for (int j = 0; j <= b.alpha(); ++j) fb.shift_or(b.row(j), static_cast<Value>(j) * stride);

    const Value flat_out = static_cast<Value>(rows - 1) * stride + a.width() + b.width() + 1;
    Bitvec fc = conv_bits(fa, fb, flat_out);

    const int out_alpha = std::min(cap_card, a.alpha() + b.alpha());
    const Value out_width = std::min(cap_sum, a.width() + b.width());
    CardSumSet out(out_width, out_alpha);
    for (int j = 0; j <= out_alpha; ++j)
        out.row(j) = fc.extract(static_cast<Value>(j) * stride, out_width + 1);
    return out;
}

namespace {

// Garner reconstruction of a value < prod(primes) from its residues.
BigInt crt_reconstruct(std::span<const std::uint64_t> residues,
                       std::span<const std::uint64_t> primes) {
    BigInt result = 0, prod = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const BigInt p = primes[i];
        // x = result + prod * t with t = (r_i - result) / prod mod p_i
        BigInt t = (BigInt(residues[i]) - result % p) % p;
        if (t < 0) t += p;
        // modular inverse of prod mod p via Fermat
        BigInt inv = boost::multiprecision::powm(prod % p, p - 2, p);
        t = t * inv % p;
        result += prod * t;
        prod *= p;
    }
    return result;
}

std::size_t max_bits(const std::vector<BigInt>& v) {
    std::size_t bits = 0;
    for (const auto& x : v) {
        const std::size_t b =
            static_cast<std::size_t>(boost::multiprecision::msb(x == 0 ? BigInt(1) : x)) + 1;
        bits = std::max(bits, b);
    }
    return bits;
}

} // namespace

CountVector count_conv(const CountVector& f, const CountVector& g, Value cap) {
    if (f.mode() != g.mode())
        throw ContractError("count_conv requires operands in the same counting mode");
    CountVector out(f.mode(), cap);

    if (!f.is_exact()) {
        std::vector<std::uint64_t> a(f.residues().begin(),
                                     f.residues().begin() +
                                         std::min<std::size_t>(f.size(), cap + 1));
        std::vector<std::uint64_t> b(g.residues().begin(),
                                     g.residues().begin() +
                                         std::min<std::size_t>(g.size(), cap + 1));
        static_assert(CountVector::kCountModulus == ntt::kPrime64[0]);
        auto c = ntt::convolve_p64(a, b, 0);
        for (Value x = 0; x <= cap && x < c.size(); ++x) out.set_residue(x, c[x]);
        return out;
    }

    const std::size_t la = std::min<std::size_t>(f.size(), cap + 1);
    const std::size_t lb = std::min<std::size_t>(g.size(), cap + 1);
    std::vector<BigInt> a(f.exacts().begin(), f.exacts().begin() + la);
    std::vector<BigInt> b(g.exacts().begin(), g.exacts().begin() + lb);

    // Coefficient bound: maxA * maxB * min(la, lb); route through CRT over
    // the 62-bit NTT primes when it fits, otherwise fall back to schoolbook.
    const std::size_t need_bits =
        max_bits(a) + max_bits(b) + std::bit_width(std::min(la, lb)) + 1;
    const std::size_t lanes = (need_bits + 60) / 61;

    if ((la + lb - 1) < 64 || lanes > 3) {
        for (std::size_t i = 0; i < la; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < lb && i + j <= cap; ++j) {
                if (b[j] == 0) continue;
                out.set_exact(i + j, out.exact(i + j) + a[i] * b[j]);
            }
        }
        return out;
    }

    std::vector<std::vector<std::uint64_t>> lane_result(lanes);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
        const BigInt p = ntt::kPrime64[lane];
        std::vector<std::uint64_t> ra(la), rb(lb);
        for (std::size_t i = 0; i < la; ++i) ra[i] = static_cast<std::uint64_t>(a[i] % p);
        for (std::size_t j = 0; j < lb; ++j) rb[j] = static_cast<std::uint64_t>(b[j] % p);
        lane_result[lane] = ntt::convolve_p64(ra, rb, static_cast<int>(lane));
    }
    const std::size_t rlen = std::min<std::size_t>(la + lb - 1, cap + 1);
    std::vector<std::uint64_t> residues(lanes), primes(lanes);
    for (std::size_t lane = 0; lane < lanes; ++lane) primes[lane] = ntt::kPrime64[lane];
    for (std::size_t x = 0; x < rlen; ++x) {
        for (std::size_t lane = 0; lane < lanes; ++lane) residues[lane] = lane_result[lane][x];
        out.set_exact(x, crt_reconstruct(residues, primes));
    }
    return out;
}

} // namespace sumsetkit
