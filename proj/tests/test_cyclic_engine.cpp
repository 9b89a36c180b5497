#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "sumsetkit/baselines.hpp"
#include "sumsetkit/cyclic_engine.hpp"
#include "test_support.hpp"

using namespace sumsetkit;

namespace {

std::vector<Value> units_of(Value m) {
    std::vector<Value> out;
    for (Value x = 1; x < m; ++x)
        if (std::gcd(x, m) == 1) out.push_back(x);
    return out;
}

bool covers_all(const std::vector<Segment>& segs, const std::vector<Value>& elems) {
    for (Value b : elems) {
        bool hit = false;
        for (const auto& seg : segs)
            if (seg.contains(b)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

} // namespace

TEST_CASE("factorize examples") {
    {
        const FactorTable t = factorize(12);
        CHECK(t.factors == std::vector<std::pair<Value, int>>{{2, 2}, {3, 1}});
        CHECK(t.sigma0 == 6);
        CHECK(t.sigma1 == 28);
        CHECK(t.phi == 4);
        CHECK(t.divisors() == std::vector<Value>{1, 2, 3, 4, 6, 12});
    }
    {
        const FactorTable t = factorize(7);
        CHECK(t.factors == std::vector<std::pair<Value, int>>{{7, 1}});
        CHECK(t.phi == 6);
    }
    {
        const FactorTable t = factorize(1);
        CHECK(t.factors.empty());
        CHECK(t.sigma0 == 1);
        CHECK(t.sigma1 == 1);
        CHECK(t.phi == 1);
        CHECK(t.divisors() == std::vector<Value>{1});
    }
    CHECK_THROWS_AS(factorize(0), ContractError);
}

TEST_CASE("factorize invariants on a range") {
    for (Value m = 1; m <= 300; ++m) {
        const FactorTable t = factorize(m);
        Value prod = 1, phi_ref = 0, s0 = 0, s1 = 0;
        for (const auto& [q, r] : t.factors)
            for (int i = 0; i < r; ++i) prod *= q;
        CHECK(prod == m);
        for (Value x = 1; x <= m; ++x) {
            if (std::gcd(x, m) == 1 && x <= m) phi_ref += (x < m || m == 1) ? 1 : 0;
            if (m % x == 0) {
                s0 += 1;
                s1 += x;
            }
        }
        if (m == 1) phi_ref = 1;
        CHECK(t.phi == phi_ref);
        CHECK(t.sigma0 == s0);
        CHECK(t.sigma1 == s1);
    }
}

TEST_CASE("mod_inverse basics") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(1, 2) == 1);
    CHECK(mod_inverse(5, 1) == 0);
    CHECK_THROWS_AS(mod_inverse(2, 4), ContractError);
    for (Value m = 2; m <= 100; ++m)
        for (Value x = 1; x < m; ++x) {
            if (std::gcd(x, m) != 1) continue;
            CHECK(x * mod_inverse(x, m) % m == 1);
        }
}

TEST_CASE("segment_sums examples") {
    CHECK(segment_sums(std::vector<Value>{2, 4}, Segment{2, 2, 7}).members() ==
          std::vector<Value>{0, 2, 4, 6});
    CHECK(segment_sums(std::vector<Value>{3}, Segment{3, 1, 5}).members() ==
          std::vector<Value>{0, 3});
    CHECK(segment_sums(std::vector<Value>{}, Segment{3, 1, 5}).members() ==
          std::vector<Value>{0});
    CHECK_THROWS_AS(segment_sums(std::vector<Value>{2}, Segment{2, 2, 4}), ContractError);
    CHECK_THROWS_AS(segment_sums(std::vector<Value>{3}, Segment{2, 2, 7}), ContractError);
}

TEST_CASE("cover_units examples") {
    {
        const auto segs = cover_units(std::vector<Value>{1, 2, 3, 4}, 2, 5);
        CHECK(segs.size() == 2);
        CHECK(covers_all(segs, {1, 2, 3, 4}));
        for (const auto& s : segs) CHECK(std::gcd(s.generator, Value(5)) == 1);
    }
    {
        const auto segs = cover_units(std::vector<Value>{1}, 3, 9);
        CHECK(segs.size() == 1);
        CHECK(covers_all(segs, {1}));
    }
    CHECK(cover_units(std::vector<Value>{}, 2, 5).empty());
    CHECK_THROWS_AS(cover_units(std::vector<Value>{3}, 2, 9), ContractError);
}

TEST_CASE("cover_units covers random unit subsets") {
    testsup::Rng rng(0xc0be);
    for (int trial = 0; trial < 150; ++trial) {
        const Value m = rng.in(2, 80);
        const auto all = units_of(m);
        std::vector<Value> s;
        for (Value x : all)
            if (rng.below(2)) s.push_back(x);
        const Value len = rng.in(1, m);
        const auto segs = cover_units(s, len, m);
        CHECK(covers_all(segs, s));
        for (const auto& seg : segs) {
            CHECK(seg.length == std::min(len, m));
            CHECK(std::gcd(seg.generator % m, m) == 1);
        }
    }
}

TEST_CASE("unit_sums examples") {
    CHECK(unit_sums(std::vector<Value>{1, 3}, 4).members() == std::vector<Value>{0, 1, 3});
    CHECK(unit_sums(std::vector<Value>{1, 2, 3, 4}, 5).members() ==
          std::vector<Value>{0, 1, 2, 3, 4});
    // |S| = 6 >= 2*sqrt(9): early exit, cross-checked by enumeration
    const std::vector<Value> s9{1, 2, 4, 5, 7, 8};
    CHECK(unit_sums(s9, 9).members() == testsup::enumerate_sums_mod(s9, 9));
    CHECK_THROWS_AS(unit_sums(std::vector<Value>{2}, 4), ContractError);
}

TEST_CASE("unit_sums equals enumeration on random unit subsets") {
    testsup::Rng rng(0x0417);
    for (int trial = 0; trial < 200; ++trial) {
        const Value m = rng.in(1, 64);
        const auto all = units_of(m);
        std::vector<Value> s;
        for (Value x : all)
            if (rng.below(2)) s.push_back(x);
        if (s.size() > 16) s.resize(16);
        CHECK(unit_sums(s, m).members() == testsup::enumerate_sums_mod(s, m));
    }
}

TEST_CASE("mod_subset_sums examples") {
    CHECK(mod_subset_sums(std::vector<Value>{2, 3}, 6).members() ==
          std::vector<Value>{0, 2, 3, 5});
    CHECK(mod_subset_sums(std::vector<Value>{4, 6}, 12).members() ==
          std::vector<Value>{0, 4, 6, 10});
    CHECK(mod_subset_sums(std::vector<Value>{0}, 5).members() == std::vector<Value>{0});
    CHECK_THROWS_AS(mod_subset_sums(std::vector<Value>{2, 2}, 6), ContractError);
    CHECK_THROWS_AS(mod_subset_sums(std::vector<Value>{7}, 6), ContractError);
    CHECK_THROWS_AS(mod_subset_sums(std::vector<Value>{1}, 0), ContractError);
}

TEST_CASE("mod_subset_sums equals enumeration on random instances") {
    testsup::Rng rng(0x6143);
    const std::vector<Value> moduli{2,  3,  4,  5,  6,  8,  9,  12, 16, 24,
                                    30, 36, 48, 60, 64, 72, 96, 100, 128, 360};
    for (int trial = 0; trial < 200; ++trial) {
        const Value m = moduli[rng.below(moduli.size())];
        std::vector<Value> s;
        const std::size_t n = std::min<std::size_t>(rng.below(12), static_cast<std::size_t>(m - 1));
        while (s.size() < n) {
            const Value v = rng.below(m);
            if (v != 0 && std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        CHECK(mod_subset_sums(s, m).members() == testsup::enumerate_sums_mod(s, m));
    }
}

TEST_CASE("recursion leaf moduli are exactly the divisors") {
    testsup::Rng rng(0x1eaf);
    for (Value m : std::vector<Value>{1, 2, 6, 12, 30, 36, 60, 97, 128, 360}) {
        std::vector<Value> s;
        for (Value v = 1; v < m && s.size() < 8; ++v)
            if (rng.below(3) == 0) s.push_back(v);
        std::vector<Value> leaves;
        mod_subset_sums(s, m, nullptr, &leaves);
        std::sort(leaves.begin(), leaves.end());
        CHECK(leaves == factorize(m).divisors());
    }
}

TEST_CASE("cover_zm examples") {
    {
        const ZmCover c = cover_zm(6, 6);
        CHECK(c.segments.size() == 3); // one per divisor class above d=1
        std::vector<bool> hit(6, false);
        hit[0] = true; // marker class
        for (const auto& seg : c.segments)
            for (Value v : seg.expand()) hit[static_cast<std::size_t>(v)] = true;
        CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    }
    {
        const ZmCover c = cover_zm(5, 2);
        std::vector<bool> hit(5, false);
        hit[0] = true;
        for (const auto& seg : c.segments)
            for (Value v : seg.expand()) hit[static_cast<std::size_t>(v)] = true;
        CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    }
    CHECK(cover_zm(1, 1).segments.empty());
}

TEST_CASE("cover_zm union is the whole group") {
    const auto ceil_sqrt = [](Value n) {
        Value r = 0;
        while (r * r < n) ++r;
        return std::max<Value>(r, 1);
    };
    for (Value m = 1; m <= 60; ++m) {
        for (Value len : {ceil_sqrt(m), m}) {
            const ZmCover c = cover_zm(m, len);
            std::vector<bool> hit(static_cast<std::size_t>(m), false);
            hit[0] = true;
            for (const auto& seg : c.segments)
                for (Value v : seg.expand()) hit[static_cast<std::size_t>(v)] = true;
            CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        }
    }
}
