#pragma once

// Shared helpers for the test binaries: a platform-independent RNG and a few
// enumeration oracles kept deliberately independent of the library kernels.

#include <cstdint>
#include <vector>

#include "sumsetkit/core.hpp"

namespace testsup {

// splitmix64: identical streams on every platform
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
};

inline std::vector<sumsetkit::Value> enumerate_sums(const std::vector<sumsetkit::Value>& vals,
                                                    sumsetkit::Value cap) {
    std::vector<bool> seen(static_cast<std::size_t>(cap) + 1, false);
    seen[0] = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << vals.size()); ++mask) {
        unsigned __int128 s = 0;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (mask & (std::uint64_t(1) << i)) s += vals[i];
        if (s <= cap) seen[static_cast<std::size_t>(s)] = true;
    }
    std::vector<sumsetkit::Value> out;
    for (sumsetkit::Value v = 0; v <= cap; ++v)
        if (seen[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

inline std::vector<sumsetkit::Value> enumerate_sums_mod(const std::vector<sumsetkit::Value>& vals,
                                                        sumsetkit::Value m) {
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    seen[0] = true;
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << vals.size()); ++mask) {
        sumsetkit::Value s = 0;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (mask & (std::uint64_t(1) << i)) s = (s + vals[i] % m) % m;
        seen[static_cast<std::size_t>(s)] = true;
    }
    std::vector<sumsetkit::Value> out;
    for (sumsetkit::Value v = 0; v < m; ++v)
        if (seen[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

} // namespace testsup
