#include "sumsetkit/bitvec.hpp"

#include <algorithm>
#include <bit>

namespace sumsetkit {

void Bitvec::shift_or(const Bitvec& other, std::uint64_t shift) {
    if (shift >= size_) return;
    const std::uint64_t ws = shift >> 6;
    const unsigned bs = static_cast<unsigned>(shift & 63);
    const std::size_t nw = words_.size();
    // Highest source word first: writes land at or above the read position,
    // which makes self-aliased use (dp |= dp << v) well defined.
    const std::size_t imax = std::min(other.words_.size(), nw - ws);
    if (bs == 0) {
        for (std::size_t i = imax; i-- > 0;) words_[i + ws] |= other.words_[i];
    } else {
        for (std::size_t i = imax; i-- > 0;) {
            if (i + ws + 1 < nw) words_[i + ws + 1] |= other.words_[i] >> (64 - bs);
            words_[i + ws] |= other.words_[i] << bs;
        }
    }
    mask_tail();
}

void Bitvec::set_all() {
    for (auto& w : words_) w = ~std::uint64_t(0);
    mask_tail();
}

void Bitvec::mask_tail() {
    const unsigned b = static_cast<unsigned>(size_ & 63);
    if (b != 0 && !words_.empty())
        words_.back() &= (std::uint64_t(1) << b) - 1;
}

Bitvec Bitvec::extract(std::uint64_t start, std::uint64_t len) const {
    Bitvec out(len);
    if (start >= size_) return out;
    len = std::min(len, size_ - start);
    const std::uint64_t ws = start >> 6;
    const unsigned bs = static_cast<unsigned>(start & 63);
    const std::size_t ow = (len + 63) / 64;
    for (std::size_t i = 0; i < ow; ++i) {
        std::uint64_t w = words_[i + ws] >> bs;
        if (bs && i + ws + 1 < words_.size()) w |= words_[i + ws + 1] << (64 - bs);
        out.words()[i] = w;
    }
    out.mask_tail();
    return out;
}

void Bitvec::trim_to(std::uint64_t n) {
    if (n >= size_) return;
    std::size_t w = static_cast<std::size_t>(n >> 6);
    unsigned b = static_cast<unsigned>(n & 63);
    if (w < words_.size()) {
        if (b != 0) {
            words_[w] &= (std::uint64_t(1) << b) - 1;
            ++w;
        }
        for (; w < words_.size(); ++w) words_[w] = 0;
    }
}

std::uint64_t Bitvec::popcount() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

std::vector<std::uint64_t> Bitvec::members() const {
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(popcount()));
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            unsigned b = std::countr_zero(w);
            out.push_back((std::uint64_t(i) << 6) + b);
            w &= w - 1;
        }
    }
    return out;
}

} // namespace sumsetkit
