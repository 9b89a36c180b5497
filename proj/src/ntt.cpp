#include "ntt.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace sumsetkit::ntt {
namespace {

// ---------------------------------------------------------------------------
// Montgomery fields. Transform data stays in the raw residue domain:
// multiplying a raw value by a Montgomery-form twiddle yields a raw value,
// so 0/1 boolean inputs need no domain-conversion passes.
// ---------------------------------------------------------------------------

constexpr std::uint32_t mont32_ninv(std::uint32_t p) {
    std::uint32_t inv = p;
    for (int i = 0; i < 4; ++i) inv *= 2 - p * inv; // Newton, inv = p^-1 mod 2^32
    return ~inv + 1;
}

struct Field32 {
    using T = std::uint32_t;
    using W = std::uint64_t;
    static constexpr std::uint32_t P = kPrime32;
    static constexpr int kMaxLg = 27;
    static constexpr std::uint32_t NINV = mont32_ninv(P);
    static constexpr std::uint32_t R = static_cast<std::uint32_t>((W(1) << 32) % P);
    static constexpr std::uint32_t R2 = static_cast<std::uint32_t>(W(R) * R % P);

    std::uint32_t p() const { return P; }
    std::uint64_t g() const { return 31; }
    int max_lg() const { return kMaxLg; }

    // t < P*2^32 -> t/2^32 mod P, in [0, 2P)
    inline T reduce(W t) const {
        std::uint32_t m = static_cast<std::uint32_t>(t) * NINV;
        return static_cast<T>((t + W(m) * P) >> 32);
    }
    inline T mul(T a, T b) const { return reduce(W(a) * b); } // needs a*b < P*2^32
    inline T shrink(T a) const { return a >= P ? a - P : a; }
    inline T shrink2(T a) const { return a >= 2 * P ? a - 2 * P : a; }

    T pow_raw(T base, std::uint64_t e) const {
        W r = 1, b = base % P;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return static_cast<T>(r);
    }
    T to_mont(T raw) const { return shrink(mul(raw, R2)); }
};

struct Field64 {
    using T = std::uint64_t;
    using W = unsigned __int128;
    std::uint64_t P;
    std::uint64_t groot;
    int lgmax;
    std::uint64_t NINV;
    std::uint64_t R2;

    Field64(std::uint64_t p, std::uint64_t g_, int lgm) : P(p), groot(g_), lgmax(lgm) {
        std::uint64_t inv = p;
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        NINV = ~inv + 1;
        W acc = 1;
        for (int i = 0; i < 128; ++i) { // 2^128 mod p
            acc <<= 1;
            if (acc >= p) acc -= p;
        }
        R2 = static_cast<std::uint64_t>(acc);
    }

    std::uint64_t p() const { return P; }
    std::uint64_t g() const { return groot; }
    int max_lg() const { return lgmax; }

    inline T reduce(W t) const {
        std::uint64_t m = static_cast<std::uint64_t>(t) * NINV;
        return static_cast<T>((t + W(m) * P) >> 64);
    }
    inline T mul(T a, T b) const { return reduce(W(a) * b); }
    inline T shrink(T a) const { return a >= P ? a - P : a; }
    inline T shrink2(T a) const { return a >= 2 * P ? a - 2 * P : a; }

    T pow_raw(T base, std::uint64_t e) const {
        W r = 1;
        std::uint64_t b = base % P;
        while (e) {
            if (e & 1) r = static_cast<std::uint64_t>(r * b % P);
            b = static_cast<std::uint64_t>(W(b) * b % P);
            e >>= 1;
        }
        return static_cast<T>(r);
    }
    T to_mont(T raw) const { return shrink(mul(raw, R2)); }
};

// Primitive 2^k-th roots in Montgomery form, one per level; immutable.
template <class F>
struct Seeds {
    using T = typename F::T;
    std::vector<T> wlen, iwlen; // wlen[k]: primitive 2^k-th root

    explicit Seeds(const F& f) {
        const int lg = f.max_lg();
        wlen.resize(lg + 1);
        iwlen.resize(lg + 1);
        const T g_inv = f.pow_raw(static_cast<T>(f.g()), f.p() - 2);
        wlen[lg] = f.to_mont(f.pow_raw(static_cast<T>(f.g()), (f.p() - 1) >> lg));
        iwlen[lg] = f.to_mont(f.pow_raw(g_inv, (f.p() - 1) >> lg));
        for (int i = lg - 1; i >= 0; --i) {
            wlen[i] = f.shrink(f.mul(wlen[i + 1], wlen[i + 1]));
            iwlen[i] = f.shrink(f.mul(iwlen[i + 1], iwlen[i + 1]));
        }
    }
};

// Twiddle tables up to this many entries live in a per-call scratch buffer
// and are shared across a level's blocks; coarser levels use running
// twiddles split into four independent chains.
constexpr int kTableBits = 15;

template <class F>
void fill_table(const F& f, typename F::T w, typename F::T* tab, std::size_t n) {
    tab[0] = f.to_mont(1);
    for (std::size_t j = 1; j < n; ++j) tab[j] = f.shrink(f.mul(tab[j - 1], w));
}

// DIF: natural order in, bit-reversed order out. Values stay in [0, 2P).
template <class F>
void fwd_transform(const F& f, const Seeds<F>& tw, typename F::T* a, int lg,
                   typename F::T* scratch) {
    using T = typename F::T;
    const std::uint64_t two_p = 2 * std::uint64_t(f.p());
    const std::size_t n = std::size_t(1) << lg;
    for (int k = lg; k >= 1; --k) {
        const std::size_t len = std::size_t(1) << k;
        const std::size_t half = len >> 1;
        const T w1 = tw.wlen[k];
        if (k - 1 <= kTableBits) {
            fill_table(f, w1, scratch, half);
            for (std::size_t s = 0; s < n; s += len) {
                T* lo = a + s;
                T* hi = a + s + half;
                for (std::size_t j = 0; j < half; ++j) {
                    const std::uint64_t u = lo[j], v = hi[j];
                    std::uint64_t add = u + v;
                    if (add >= two_p) add -= two_p;
                    std::uint64_t sub = u + two_p - v;
                    if (sub >= two_p) sub -= two_p;
                    lo[j] = static_cast<T>(add);
                    hi[j] = f.mul(static_cast<T>(sub), scratch[j]);
                }
            }
        } else {
            const T w2 = f.shrink(f.mul(w1, w1));
            const T w4 = f.shrink(f.mul(w2, w2));
            for (std::size_t s = 0; s < n; s += len) {
                T* lo = a + s;
                T* hi = a + s + half;
                T r0 = f.to_mont(1);
                T r1 = w1, r2 = w2, r3 = f.shrink(f.mul(w2, w1));
                for (std::size_t j = 0; j + 4 <= half; j += 4) {
                    for (int t = 0; t < 4; ++t) {
                        const T w = t == 0 ? r0 : t == 1 ? r1 : t == 2 ? r2 : r3;
                        const std::uint64_t u = lo[j + t], v = hi[j + t];
                        std::uint64_t add = u + v;
                        if (add >= two_p) add -= two_p;
                        std::uint64_t sub = u + two_p - v;
                        if (sub >= two_p) sub -= two_p;
                        lo[j + t] = static_cast<T>(add);
                        hi[j + t] = f.mul(static_cast<T>(sub), w);
                    }
                    r0 = f.shrink(f.mul(r0, w4));
                    r1 = f.shrink(f.mul(r1, w4));
                    r2 = f.shrink(f.mul(r2, w4));
                    r3 = f.shrink(f.mul(r3, w4));
                }
            }
        }
    }
}

// DIT: bit-reversed order in, natural order out; inverse of fwd_transform
// up to the global factor n, folded into the caller's scaling pass.
template <class F>
void inv_transform(const F& f, const Seeds<F>& tw, typename F::T* a, int lg,
                   typename F::T* scratch) {
    using T = typename F::T;
    const std::uint64_t two_p = 2 * std::uint64_t(f.p());
    const std::size_t n = std::size_t(1) << lg;
    for (int k = 1; k <= lg; ++k) {
        const std::size_t len = std::size_t(1) << k;
        const std::size_t half = len >> 1;
        const T w1 = tw.iwlen[k];
        if (k - 1 <= kTableBits) {
            fill_table(f, w1, scratch, half);
            for (std::size_t s = 0; s < n; s += len) {
                T* lo = a + s;
                T* hi = a + s + half;
                for (std::size_t j = 0; j < half; ++j) {
                    const std::uint64_t u = lo[j];
                    const std::uint64_t x = f.mul(hi[j], scratch[j]);
                    std::uint64_t add = u + x;
                    if (add >= two_p) add -= two_p;
                    std::uint64_t sub = u + two_p - x;
                    if (sub >= two_p) sub -= two_p;
                    lo[j] = static_cast<T>(add);
                    hi[j] = static_cast<T>(sub);
                }
            }
        } else {
            const T w2 = f.shrink(f.mul(w1, w1));
            const T w4 = f.shrink(f.mul(w2, w2));
            for (std::size_t s = 0; s < n; s += len) {
                T* lo = a + s;
                T* hi = a + s + half;
                T r0 = f.to_mont(1);
                T r1 = w1, r2 = w2, r3 = f.shrink(f.mul(w2, w1));
                for (std::size_t j = 0; j + 4 <= half; j += 4) {
                    for (int t = 0; t < 4; ++t) {
                        const T w = t == 0 ? r0 : t == 1 ? r1 : t == 2 ? r2 : r3;
                        const std::uint64_t u = lo[j + t];
                        const std::uint64_t x = f.mul(hi[j + t], w);
                        std::uint64_t add = u + x;
                        if (add >= two_p) add -= two_p;
                        std::uint64_t sub = u + two_p - x;
                        if (sub >= two_p) sub -= two_p;
                        lo[j + t] = static_cast<T>(add);
                        hi[j + t] = static_cast<T>(sub);
                    }
                    r0 = f.shrink(f.mul(r0, w4));
                    r1 = f.shrink(f.mul(r1, w4));
                    r2 = f.shrink(f.mul(r2, w4));
                    r3 = f.shrink(f.mul(r3, w4));
                }
            }
        }
    }
}

const Field32& field32() {
    static const Field32 f;
    return f;
}
const Seeds<Field32>& seeds32() {
    static const Seeds<Field32> s(field32());
    return s;
}
const Field64& field64(int lane) {
    static const Field64 f0(kPrime64[0], kPrimRoot64[0], 57);
    static const Field64 f1(kPrime64[1], kPrimRoot64[1], 56);
    static const Field64 f2(kPrime64[2], kPrimRoot64[2], 55);
    return lane == 0 ? f0 : lane == 1 ? f1 : f2;
}
const Seeds<Field64>& seeds64(int lane) {
    static const Seeds<Field64> s0(field64(0));
    static const Seeds<Field64> s1(field64(1));
    static const Seeds<Field64> s2(field64(2));
    return lane == 0 ? s0 : lane == 1 ? s1 : s2;
}

// Full product convolution; inputs reduced mod P, result reduced mod P.
template <class F>
std::vector<typename F::T> convolve_impl(const F& f, const Seeds<F>& tw,
                                         const std::vector<typename F::T>& a,
                                         const std::vector<typename F::T>& b) {
    using T = typename F::T;
    using W = typename F::W;
    if (a.empty() || b.empty()) return {};
    const std::size_t rlen = a.size() + b.size() - 1;

    if (rlen < 64) { // transform overhead dominates at tiny sizes
        std::vector<T> c(rlen, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                W t = W(a[i]) * b[j] + c[i + j];
                c[i + j] = static_cast<T>(t % f.p());
            }
        }
        return c;
    }

    const int lg = std::bit_width(rlen - 1);
    if (lg > f.max_lg()) throw std::length_error("ntt: transform length exceeds field 2-adicity");
    const std::size_t n = std::size_t(1) << lg;

    std::vector<T> fa(n, 0), fb(n, 0);
    std::vector<T> scratch(std::min(n / 2 + 1, std::size_t(1) << kTableBits));
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fwd_transform(f, tw, fa.data(), lg, scratch.data());
    fwd_transform(f, tw, fb.data(), lg, scratch.data());
    for (std::size_t i = 0; i < n; ++i)
        fa[i] = f.mul(f.shrink(fa[i]), fb[i]);
    inv_transform(f, tw, fa.data(), lg, scratch.data());

    // montmul(x, n^-1 * R^2) == x * n^-1 * R; x carries one stray R^-1 from
    // the pointwise pass, so this lands on the true coefficient.
    const T scale = f.to_mont(f.to_mont(f.pow_raw(static_cast<T>(n % f.p()), f.p() - 2)));
    fa.resize(rlen);
    for (auto& x : fa) x = f.shrink(f.mul(x, scale));
    return fa;
}

} // namespace

std::vector<std::uint32_t> convolve_p32(const std::vector<std::uint32_t>& a,
                                        const std::vector<std::uint32_t>& b) {
    return convolve_impl(field32(), seeds32(), a, b);
}

std::vector<std::uint64_t> convolve_p64(const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b, int lane) {
    return convolve_impl(field64(lane), seeds64(lane), a, b);
}

namespace {

// result |= src << shift, within [0, out_len) bits
void or_shifted(std::vector<std::uint64_t>& out, std::uint64_t out_len,
                const std::uint64_t* src, std::uint64_t src_len, std::uint64_t shift) {
    if (shift >= out_len) return;
    const std::uint64_t ws = shift >> 6;
    const unsigned bs = static_cast<unsigned>(shift & 63);
    const std::size_t nw = out.size();
    const std::size_t sw = static_cast<std::size_t>((src_len + 63) / 64);
    if (bs == 0) {
        for (std::size_t i = 0; i < sw && i + ws < nw; ++i) out[i + ws] |= src[i];
    } else {
        for (std::size_t i = 0; i < sw && i + ws < nw; ++i) {
            out[i + ws] |= src[i] << bs;
            if (i + ws + 1 < nw) out[i + ws + 1] |= src[i] >> (64 - bs);
        }
    }
    const unsigned tail = static_cast<unsigned>(out_len & 63);
    if (tail) out.back() &= (std::uint64_t(1) << tail) - 1;
}

std::uint64_t popcount_words(const std::uint64_t* w, std::uint64_t bits) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < (bits + 63) / 64; ++i) c += std::popcount(w[i]);
    return c;
}

} // namespace

std::vector<std::uint64_t> convolve_bool_words(
    const std::uint64_t* a_words, std::uint64_t a_len,
    const std::uint64_t* b_words, std::uint64_t b_len,
    std::uint64_t out_len) {
    std::vector<std::uint64_t> out((out_len + 63) / 64, 0);
    if (out_len == 0 || a_len == 0 || b_len == 0) return out;

    const std::uint64_t rlen = std::min(a_len + b_len - 1, out_len);
    const std::uint64_t pa = popcount_words(a_words, a_len);
    const std::uint64_t pb = popcount_words(b_words, b_len);
    if (pa == 0 || pb == 0) return out;

    // Sparse/small path: OR the denser side shifted by each set bit of the
    // sparser side. Word ops ~ pop * words; NTT ops ~ 3 * padded * lg.
    const std::uint64_t cost_shift =
        std::min(pa * ((b_len + 63) / 64), pb * ((a_len + 63) / 64));
    const int lg = std::bit_width(std::uint64_t(rlen - 1)) + (rlen > 1 ? 0 : 0);
    const std::uint64_t padded = rlen <= 1 ? 1 : (std::uint64_t(1) << std::bit_width(rlen - 1));
    const std::uint64_t cost_ntt = 3 * padded * static_cast<unsigned>(std::bit_width(padded)) / 12;
    (void)lg;

    if (rlen < 64 || cost_shift <= cost_ntt) {
        const bool a_sparser = pa * ((b_len + 63) / 64) <= pb * ((a_len + 63) / 64);
        const std::uint64_t* sprs = a_sparser ? a_words : b_words;
        const std::uint64_t sprs_len = a_sparser ? a_len : b_len;
        const std::uint64_t* dense = a_sparser ? b_words : a_words;
        const std::uint64_t dense_len = a_sparser ? b_len : a_len;
        for (std::uint64_t wi = 0; wi < (sprs_len + 63) / 64; ++wi) {
            std::uint64_t w = sprs[wi];
            while (w) {
                const unsigned bit = std::countr_zero(w);
                or_shifted(out, out_len, dense, dense_len, (wi << 6) + bit);
                w &= w - 1;
            }
        }
        return out;
    }

    if (std::bit_width(padded) - 1 <= Field32::kMaxLg) {
        std::vector<std::uint32_t> fa(static_cast<std::size_t>(std::min(a_len, rlen)), 0);
        std::vector<std::uint32_t> fb(static_cast<std::size_t>(std::min(b_len, rlen)), 0);
        for (std::size_t i = 0; i < fa.size(); ++i)
            fa[i] = (a_words[i >> 6] >> (i & 63)) & 1u;
        for (std::size_t i = 0; i < fb.size(); ++i)
            fb[i] = (b_words[i >> 6] >> (i & 63)) & 1u;
        const auto c = convolve_p32(fa, fb);
        for (std::size_t i = 0; i < c.size() && i < out_len; ++i)
            if (c[i]) out[i >> 6] |= std::uint64_t(1) << (i & 63);
        return out;
    }

    // Fallback lane for lengths beyond the 31-bit field's 2-adicity.
    std::vector<std::uint64_t> fa(static_cast<std::size_t>(std::min(a_len, rlen)), 0);
    std::vector<std::uint64_t> fb(static_cast<std::size_t>(std::min(b_len, rlen)), 0);
    for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = (a_words[i >> 6] >> (i & 63)) & 1u;
    for (std::size_t i = 0; i < fb.size(); ++i) fb[i] = (b_words[i >> 6] >> (i & 63)) & 1u;
    const auto c = convolve_p64(fa, fb, 0);
    for (std::size_t i = 0; i < c.size() && i < out_len; ++i)
        if (c[i]) out[i >> 6] |= std::uint64_t(1) << (i & 63);
    return out;
}

} // namespace sumsetkit::ntt
