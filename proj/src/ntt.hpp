#pragma once

// Exact convolution over word-sized prime fields. Forward transforms are
// decimation-in-frequency (natural -> bit-reversed order), inverses are
// decimation-in-time, so no bit-reversal pass is needed for convolution.
// Scratch is per call; the only shared state is immutable twiddle seeds.

#include <cstdint>
#include <vector>

namespace sumsetkit::ntt {

// 15*2^27 + 1, primitive root 31. Handles lengths up to 2^27.
inline constexpr std::uint32_t kPrime32 = 2013265921u;

// 62-bit NTT primes used for counting convolutions and CRT reconstruction.
// kPrime64[0] doubles as the default modulus of modular counting mode.
inline constexpr std::uint64_t kPrime64[3] = {
    4179340454199820289ull, // 29*2^57 + 1, g = 3
    1945555039024054273ull, // 27*2^56 + 1, g = 5
    2485986994308513793ull, // 69*2^55 + 1, g = 5
};
inline constexpr std::uint64_t kPrimRoot64[3] = {3, 5, 5};

// c[k] = sum_{i+j=k} a[i]*b[j] mod kPrime32; result length a+b-1 (empty if
// either input is empty). Inputs must be reduced mod kPrime32.
std::vector<std::uint32_t> convolve_p32(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b);

// Same over kPrime64[lane].
std::vector<std::uint64_t> convolve_p64(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b,
                                        int lane);

// Boolean convolution: given 0/1 vectors, returns the 0/1 support of the
// product polynomial, truncated to out_len. Exact: coefficients are counts
// bounded by the shorter input length, which never wraps the prime.
// Routes small sizes to a word-shift kernel and large ones to the NTT.
std::vector<std::uint64_t> convolve_bool_words(
    const std::uint64_t* a_words, std::uint64_t a_len,
    const std::uint64_t* b_words, std::uint64_t b_len,
    std::uint64_t out_len);

} // namespace sumsetkit::ntt
