#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sumsetkit/baselines.hpp"
#include "test_support.hpp"

using namespace sumsetkit;
using namespace sumsetkit::baselines;

namespace {

MultisetInput ms(std::initializer_list<std::pair<Value, std::uint64_t>> entries) {
    std::vector<MultisetEntry> v;
    for (auto [val, mult] : entries) v.push_back({val, mult});
    return MultisetInput::from_entries(std::move(v));
}

} // namespace

TEST_CASE("bellman_dp examples") {
    CHECK(bellman_dp(ms({{1, 1}, {2, 1}, {3, 1}}), 4).members() ==
          std::vector<Value>{0, 1, 2, 3, 4});
    CHECK(bellman_dp(MultisetInput{}, 3).members() == std::vector<Value>{0});
    CHECK(bellman_dp(ms({{3, 5}}), 15).members() ==
          std::vector<Value>{0, 3, 6, 9, 12, 15});
}

TEST_CASE("brute_force examples and guard") {
    CHECK(brute_force(ms({{2, 1}, {3, 1}}), 10).members() == std::vector<Value>{0, 2, 3, 5});
    CHECK(brute_force_mod(ms({{2, 1}, {3, 1}}), 4).members() ==
          std::vector<Value>{0, 1, 2, 3});
    CHECK_THROWS_AS(brute_force(ms({{1, 25}}), 30), ContractError);
}

TEST_CASE("bellman_dp equals brute force on random instances") {
    testsup::Rng rng(0xbe11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        std::vector<MultisetEntry> entries;
        for (std::size_t i = 0; i < n; ++i) entries.push_back({rng.in(1, 64), 1});
        const MultisetInput s = MultisetInput::from_entries(std::move(entries));
        const Value u = rng.in(1, 128);
        CHECK(bellman_dp(s, u) == brute_force(s, u));
    }
}

TEST_CASE("card_dp examples") {
    {
        const CardSumSet d = card_dp(std::vector<Value>{1, 2}, 3);
        CHECK(d.cells() ==
              std::vector<std::pair<Value, int>>{{0, 0}, {1, 1}, {2, 1}, {3, 2}});
    }
    {
        const CardSumSet d = card_dp(std::vector<Value>{5}, 3);
        CHECK(d.cells() == std::vector<std::pair<Value, int>>{{0, 0}});
    }
    {
        const CardSumSet d = card_dp(std::vector<Value>{2, 3, 4}, 7);
        CHECK(d.cells() == std::vector<std::pair<Value, int>>{
                               {0, 0}, {2, 1}, {3, 1}, {4, 1}, {5, 2}, {6, 2}, {7, 2}});
    }
    CHECK_THROWS_AS(card_dp(std::vector<Value>{4, 4}, 10), ContractError);
}

TEST_CASE("card_dp projection equals bellman support") {
    testsup::Rng rng(0xcadd);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(10);
        std::vector<Value> vals;
        while (vals.size() < n) {
            const Value v = rng.in(1, 60);
            if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
        const Value u = rng.in(1, 100);
        const CardSumSet d = card_dp(vals, u);
        SumSet projected(SumMode::kInteger, u);
        for (const auto& [s, j] : d.cells()) projected.bits().set(s);
        CHECK(projected == bellman_dp(MultisetInput::from_values(vals), u));
    }
}
