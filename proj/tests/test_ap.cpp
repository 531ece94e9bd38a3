#include "aprec/aprec.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace aprec;

namespace {

std::vector<std::int64_t> random_set(std::mt19937_64& rng, std::int64_t horizon, double fill) {
    std::bernoulli_distribution keep(fill);
    std::vector<std::int64_t> out;
    for (std::int64_t n = 0; n <= horizon; ++n)
        if (keep(rng)) out.push_back(n);
    return out;
}

}  // namespace

TEST(HitSet, SortsAndDeduplicates) {
    hit_set s({5, 1, 3, 1, 5});
    EXPECT_EQ(s.elements(), (std::vector<std::int64_t>{1, 3, 5}));
    EXPECT_EQ(s.horizon(), 5);
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(2));
}

TEST(HitSet, RejectsBadInput) {
    EXPECT_THROW(hit_set({-1, 2}), std::invalid_argument);
    EXPECT_THROW(hit_set({1, 9}, 5), std::invalid_argument);
    EXPECT_EQ(hit_set({}, 7).horizon(), 7);
}

TEST(LongestAp, Example) {
    auto w = longest_ap(hit_set({1, 2, 3, 5, 7, 9}));
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, (ap_witness{1, 2, 5}));
}

TEST(LongestAp, EmptyAndSingleton) {
    EXPECT_FALSE(longest_ap(hit_set()));
    auto w = longest_ap(hit_set({4}));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->length, 1);
    EXPECT_EQ(w->initial, 4);
}

TEST(LongestAp, TiesPreferSmallStepThenSmallInitial) {
    EXPECT_EQ(*longest_ap(hit_set({0, 1, 10, 11})), (ap_witness{0, 1, 2}));
    EXPECT_EQ(*longest_ap(hit_set({0, 3, 6, 20, 22, 24})), (ap_witness{20, 2, 3}));
}

TEST(LongestAp, MatchesBruteForceOnRandomSets) {
    std::mt19937_64 rng(20261019);
    std::uniform_int_distribution<std::int64_t> horizon(0, 200);
    std::uniform_real_distribution<double> fill(0.02, 0.9);
    for (int trial = 0; trial < 300; ++trial) {
        auto values = random_set(rng, horizon(rng), fill(rng));
        const hit_set set(values);
        auto fast = longest_ap(set);
        auto slow = oracle::longest_ap(values);
        ASSERT_EQ(fast.has_value(), slow.has_value()) << "trial " << trial;
        if (fast) {
            EXPECT_EQ(*fast, *slow) << "trial " << trial;
            EXPECT_TRUE(verify_ap(set, *fast));
        }
    }
}

TEST(FindAp, FirstInStepThenInitialOrder) {
    hit_set s({2, 4, 6, 7, 8, 9});
    EXPECT_EQ(*find_ap(s, 3), (ap_witness{6, 1, 3}));
    EXPECT_EQ(*find_ap(s, 4), (ap_witness{6, 1, 4}));
    EXPECT_FALSE(find_ap(s, 6));  // inconclusive: nothing of that length below the horizon
    EXPECT_THROW(find_ap(s, 0), std::invalid_argument);
}

TEST(FindAp, WitnessesAreSound) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const hit_set set(random_set(rng, 120, 0.4));
        for (std::int64_t len = 1; len <= 6; ++len)
            if (auto w = find_ap(set, len)) {
                EXPECT_EQ(w->length, len);
                EXPECT_TRUE(verify_ap(set, *w));
            }
    }
}

TEST(HomogeneousAp, InitialTermEqualsStep) {
    EXPECT_EQ(*find_homogeneous_ap(hit_set({3, 4, 6, 8, 9}), 3), (ap_witness{3, 3, 3}));
    EXPECT_FALSE(find_homogeneous_ap(hit_set({1, 3, 5}), 2));
}

TEST(CountAps, CountsInitialTerms) {
    std::vector<std::int64_t> v;
    for (std::int64_t n = 0; n <= 40; n += 2) v.push_back(n);
    const hit_set evens(v);
    EXPECT_EQ(count_aps_with_step(evens, 2, 3), 19);
    EXPECT_EQ(count_aps_with_step(evens, 1, 2), 0);
}

TEST(ApBar, PassAndInconclusiveFailure) {
    std::vector<std::int64_t> v;
    for (std::int64_t n = 0; n <= 40; n += 2) v.push_back(n);
    auto pass = ap_bar_estimate(hit_set(v), 3, 5);
    EXPECT_TRUE(pass.pass);
    EXPECT_EQ(pass.step, 2);
    auto fail = ap_bar_estimate(hit_set({1, 2, 4, 8, 16, 32}), 3, 2);
    EXPECT_FALSE(fail.pass);
    EXPECT_FALSE(fail.step);
    EXPECT_EQ(fail.count, 0);
}

TEST(Density, FullSetAndEvens) {
    auto full = density_report(hit_set::range(0, 99), 10);
    EXPECT_EQ(full.lower_proxy, 1);
    EXPECT_EQ(full.upper_proxy, 1);
    EXPECT_EQ(full.banach_upper_proxy, 1);

    std::vector<std::int64_t> v;
    for (std::int64_t n = 0; n <= 99; n += 2) v.push_back(n);
    auto evens = density_report(hit_set(v, 99), 10);
    // Tail prefixes start at an even endpoint, so the upper proxy sits just above 1/2.
    EXPECT_EQ(evens.upper_proxy, rational(26, 51));
    EXPECT_LE(evens.lower_proxy, rational(1, 2));
    EXPECT_EQ(evens.banach_upper_proxy, std::max(rational(1, 2), evens.upper_proxy));
}

TEST(Density, BanachSeesDenseBlocks) {
    // Sparse overall, but one full window.
    std::vector<std::int64_t> v;
    for (std::int64_t n = 500; n < 520; ++n) v.push_back(n);
    auto d = density_report(hit_set(v, 1000), 20);
    EXPECT_EQ(d.banach_upper_proxy, 1);
    EXPECT_LT(d.upper_proxy, rational(1, 10));
}

TEST(Density, WindowValidation) {
    EXPECT_THROW(density_report(hit_set({1, 2}, 5), 0), std::invalid_argument);
    EXPECT_THROW(density_report(hit_set({1, 2}, 5), 7), std::invalid_argument);
    EXPECT_NO_THROW(density_report(hit_set({1, 2}, 5), 6));
}

TEST(Density, OrderingAndShiftStability) {
    std::mt19937_64 rng(99);
    const std::int64_t horizon = 400;
    for (int trial = 0; trial < 50; ++trial) {
        auto values = random_set(rng, horizon, 0.3);
        auto d = density_report(hit_set(values, horizon), 25);
        EXPECT_LE(d.lower_proxy, d.upper_proxy);
        EXPECT_LE(d.upper_proxy, d.banach_upper_proxy);

        // Translating by s moves each count |S ∩ [0,n]| by at most s.
        const std::int64_t s = 7;
        std::vector<std::int64_t> moved;
        for (auto x : values)
            if (x + s <= horizon) moved.push_back(x + s);
        auto e = density_report(hit_set(moved, horizon), 25);
        const rational slack(s, (horizon + 1) / 2 + 1);
        EXPECT_LE(abs(d.upper_proxy - e.upper_proxy), slack);
        EXPECT_LE(abs(d.lower_proxy - e.lower_proxy), slack);
    }
}
