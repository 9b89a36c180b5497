#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sumsetkit/convolution.hpp"
#include "test_support.hpp"

using namespace sumsetkit;

namespace {

SumSet iset(Value bound, std::initializer_list<Value> vals) {
    return SumSet::of(SumMode::kInteger, bound, vals);
}
SumSet cset(Value m, std::initializer_list<Value> vals) {
    return SumSet::of(SumMode::kCyclic, m - 1, vals);
}

SumSet random_set(testsup::Rng& rng, Value bound, int density_pct) {
    SumSet s(SumMode::kInteger, bound);
    for (Value v = 0; v <= bound; ++v)
        if (rng.below(100) < static_cast<std::uint64_t>(density_pct)) s.bits().set(v);
    return s;
}

// quadratic double-loop reference
SumSet conv_reference(const SumSet& a, const SumSet& b, Value cap) {
    SumSet out(SumMode::kInteger, cap);
    for (Value x : a.members())
        for (Value y : b.members())
            if (x + y <= cap) out.bits().set(x + y);
    return out;
}

} // namespace

TEST_CASE("bool_conv basic examples") {
    CHECK(bool_conv(iset(1, {0, 1}), iset(2, {0, 2}), 3).members() ==
          std::vector<Value>{0, 1, 2, 3});
    CHECK(bool_conv(iset(5, {0, 5}), iset(5, {0, 5}), 7).members() ==
          std::vector<Value>{0, 5});
    // pair enumeration: {0,2,3}+{0,4} = {0,2,3,4,6,7}
    CHECK(bool_conv(iset(3, {0, 2, 3}), iset(4, {0, 4}), 10).members() ==
          std::vector<Value>{0, 2, 3, 4, 6, 7});
}

TEST_CASE("bool_conv with cap 0") {
    CHECK(bool_conv(iset(0, {0}), iset(0, {0}), 0).members() == std::vector<Value>{0});
    CHECK(bool_conv(iset(3, {1}), iset(3, {2}), 0).members().empty());
}

TEST_CASE("bool_conv agrees with the quadratic oracle") {
    testsup::Rng rng(0xb001);
    for (int trial = 0; trial < 1000; ++trial) {
        const Value cap = rng.in(0, 512);
        const Value ba = rng.in(0, 512), bb = rng.in(0, 512);
        const SumSet a = random_set(rng, ba, 1 + static_cast<int>(rng.below(30)));
        const SumSet b = random_set(rng, bb, 1 + static_cast<int>(rng.below(30)));
        CHECK(bool_conv(a, b, cap) == conv_reference(a, b, cap));
    }
}

TEST_CASE("bool_conv is commutative and associative under a final cap") {
    testsup::Rng rng(0xca5c);
    for (int trial = 0; trial < 50; ++trial) {
        const Value cap = rng.in(1, 300);
        const SumSet a = random_set(rng, rng.in(0, 200), 20);
        const SumSet b = random_set(rng, rng.in(0, 200), 20);
        const SumSet c = random_set(rng, rng.in(0, 200), 20);
        CHECK(bool_conv(a, b, cap) == bool_conv(b, a, cap));
        const SumSet left = bool_conv(bool_conv(a, b, cap), c, cap);
        const SumSet right = bool_conv(a, bool_conv(b, c, cap), cap);
        CHECK(left == right);
    }
}

TEST_CASE("bool_conv_2d examples") {
    CardSumSet a(1, 1), b(2, 1);
    a.insert(0, 0);
    a.insert(1, 1);
    b.insert(0, 0);
    b.insert(2, 1);
    const CardSumSet c = bool_conv_2d(a, b, 3, 2);
    CHECK(c.cells() ==
          std::vector<std::pair<Value, int>>{{0, 0}, {1, 1}, {2, 1}, {3, 2}});
}

TEST_CASE("bool_conv_2d identity and cap truncation") {
    testsup::Rng rng(0x2d);
    CardSumSet id(0, 0);
    id.insert(0, 0);
    for (int trial = 0; trial < 30; ++trial) {
        CardSumSet a(rng.in(0, 40), static_cast<int>(rng.below(5)));
        for (int j = 0; j <= a.alpha(); ++j)
            for (Value s = 0; s <= a.width(); ++s)
                if (rng.below(4) == 0) a.insert(s, j);
        const CardSumSet c = bool_conv_2d(a, id, a.width(), a.alpha());
        CHECK(c == a);
    }
    // (1,1)+(1,1) = (2,2) dies at cap_card 1
    CardSumSet x(1, 1);
    x.insert(0, 0);
    x.insert(1, 1);
    const CardSumSet y = bool_conv_2d(x, x, 2, 1);
    CHECK(y.cells() == std::vector<std::pair<Value, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("cyclic_bool_conv examples") {
    CHECK(cyclic_bool_conv(cset(6, {0, 3}), cset(6, {0, 4}), 6).members() ==
          std::vector<Value>{0, 1, 3, 4});
    // identity
    testsup::Rng rng(0xcc);
    for (int trial = 0; trial < 20; ++trial) {
        const Value m = rng.in(1, 64);
        SumSet a(SumMode::kCyclic, m - 1);
        for (Value v = 0; v < m; ++v)
            if (rng.below(3) == 0) a.bits().set(v);
        CHECK(cyclic_bool_conv(a, SumSet::zero_only(SumMode::kCyclic, m - 1), m) == a);
    }
    CHECK(cyclic_bool_conv(cset(2, {0, 1}), cset(2, {0, 1}), 2).members() ==
          std::vector<Value>{0, 1});
}

TEST_CASE("cyclic_bool_conv equals capped conv followed by folding") {
    testsup::Rng rng(0xf01d);
    for (int trial = 0; trial < 100; ++trial) {
        const Value m = rng.in(1, 128);
        SumSet a(SumMode::kCyclic, m - 1), b(SumMode::kCyclic, m - 1);
        for (Value v = 0; v < m; ++v) {
            if (rng.below(3) == 0) a.bits().set(v);
            if (rng.below(3) == 0) b.bits().set(v);
        }
        const SumSet got = cyclic_bool_conv(a, b, m);

        SumSet ai(SumMode::kInteger, m - 1), bi(SumMode::kInteger, m - 1);
        ai.bits() = a.bits();
        bi.bits() = b.bits();
        const SumSet full = bool_conv(ai, bi, 2 * m - 2);
        SumSet folded(SumMode::kCyclic, m - 1);
        for (Value v : full.members()) folded.bits().set(v % m);
        CHECK(got == folded);
    }
}

TEST_CASE("cyclic_bool_conv rejects mode and modulus mismatches") {
    CHECK_THROWS_AS(cyclic_bool_conv(iset(5, {0}), iset(5, {0}), 6), ContractError);
    CHECK_THROWS_AS(cyclic_bool_conv(cset(6, {0}), cset(5, {0}), 6), ContractError);
}

TEST_CASE("count_conv examples") {
    CountVector f(CountVector::Mode::kExact, 2), g(CountVector::Mode::kExact, 2);
    f.set_exact(0, 1);
    f.set_exact(1, 1);
    g.set_exact(0, 1);
    g.set_exact(2, 1);
    const CountVector c = count_conv(f, g, 2);
    CHECK(c.exact(0) == 1);
    CHECK(c.exact(1) == 1);
    CHECK(c.exact(2) == 1);

    // f (*) delta0 == f
    const CountVector d0 = CountVector::delta0(CountVector::Mode::kExact, 2);
    CHECK(count_conv(f, d0, 2) == f);

    CountVector p(CountVector::Mode::kExact, 1), q(CountVector::Mode::kExact, 1);
    p.set_exact(0, 1);
    p.set_exact(1, 2);
    q.set_exact(0, 3);
    q.set_exact(1, 4);
    const CountVector r = count_conv(p, q, 1);
    CHECK(r.exact(0) == 3);
    CHECK(r.exact(1) == 10);
}

TEST_CASE("count_conv mode mismatch is rejected") {
    const CountVector f = CountVector::delta0(CountVector::Mode::kExact, 2);
    const CountVector g = CountVector::delta0(CountVector::Mode::kModular, 2);
    CHECK_THROWS_AS(count_conv(f, g, 2), ContractError);
}

TEST_CASE("count_conv exact agrees with schoolbook through the CRT path") {
    testsup::Rng rng(0xc0ffee);
    for (int trial = 0; trial < 10; ++trial) {
        const Value bound = 150; // forces the transform path
        CountVector f(CountVector::Mode::kExact, bound), g(CountVector::Mode::kExact, bound);
        // large coefficients so several CRT lanes are required
        for (Value x = 0; x <= bound; ++x) {
            if (rng.below(2)) f.set_exact(x, BigInt(1) << rng.below(100));
            if (rng.below(2)) g.set_exact(x, BigInt(1) << rng.below(100));
        }
        const CountVector got = count_conv(f, g, bound);
        for (Value x = 0; x <= bound; ++x) {
            BigInt want = 0;
            for (Value t = 0; t <= x; ++t) want += f.exact(t) * g.exact(x - t);
            CHECK(got.exact(x) == want);
        }
    }
}

TEST_CASE("count_conv exact projected to nonzero equals bool_conv") {
    testsup::Rng rng(0x9a11);
    for (int trial = 0; trial < 50; ++trial) {
        const Value cap = rng.in(1, 200);
        const SumSet a = random_set(rng, rng.in(0, 150), 25);
        const SumSet b = random_set(rng, rng.in(0, 150), 25);
        CountVector f(CountVector::Mode::kExact, a.bound());
        CountVector g(CountVector::Mode::kExact, b.bound());
        for (Value v : a.members()) f.set_exact(v, 1);
        for (Value v : b.members()) g.set_exact(v, 1);
        CHECK(count_conv(f, g, cap).support() == bool_conv(a, b, cap).members());
    }
}

TEST_CASE("count_conv modular matches exact reduced mod the counting prime") {
    testsup::Rng rng(0x30d);
    for (int trial = 0; trial < 20; ++trial) {
        const Value bound = rng.in(1, 120);
        CountVector fe(CountVector::Mode::kExact, bound), fm(CountVector::Mode::kModular, bound);
        CountVector ge(CountVector::Mode::kExact, bound), gm(CountVector::Mode::kModular, bound);
        for (Value x = 0; x <= bound; ++x) {
            const std::uint64_t fv = rng.below(1000), gv = rng.below(1000);
            fe.set_exact(x, fv);
            fm.set_residue(x, fv);
            ge.set_exact(x, gv);
            gm.set_residue(x, gv);
        }
        const CountVector ce = count_conv(fe, ge, bound);
        const CountVector cm = count_conv(fm, gm, bound);
        for (Value x = 0; x <= bound; ++x) {
            const BigInt want = ce.exact(x) % CountVector::kCountModulus;
            CHECK(cm.residue(x) == static_cast<std::uint64_t>(want));
        }
    }
}
