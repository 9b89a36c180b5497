#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace sumsetkit {

/// Fixed-size bit vector over 64-bit words. Index range is [0, size).
class Bitvec {
public:
    Bitvec() = default;
    explicit Bitvec(std::uint64_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    std::uint64_t size() const { return size_; }

    bool test(std::uint64_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void set_all();
    void reset(std::uint64_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    /// this |= other << shift, truncated to this->size(). Word-parallel.
    void shift_or(const Bitvec& other, std::uint64_t shift);

    /// Bits [start, start+len) of this as a new vector. Word-parallel.
    Bitvec extract(std::uint64_t start, std::uint64_t len) const;

    /// Clears any bits at positions >= n (after resizing logic elsewhere).
    void trim_to(std::uint64_t n);

    std::uint64_t popcount() const;
    std::vector<std::uint64_t> members() const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    bool operator==(const Bitvec& o) const { return size_ == o.size_ && words_ == o.words_; }

private:
    void mask_tail();

    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace sumsetkit
