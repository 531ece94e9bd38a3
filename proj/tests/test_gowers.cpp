#include "aprec/gowers/gowers.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace aprec::gowers;

TEST(GrowthFunction, Domain) {
    EXPECT_DOUBLE_EQ(f_eval(4.0), 4.0);
    EXPECT_THROW(f_eval(3.9), std::domain_error);
    EXPECT_NEAR(f_eval(65536.0), 40143.9, 0.1);
}

TEST(GrowthFunction, IncreasingOnIntegerSamples) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> exponent(2.0, 60.0);
    for (int i = 0; i < 10000; ++i) {
        const double t = std::floor(std::exp2(exponent(rng)));
        // Above 2^53 consecutive integers are not representable, so step by a visible amount.
        const double next = t + std::max(1.0, std::ldexp(1.0, static_cast<int>(std::log2(t)) - 40));
        EXPECT_LT(f_eval(t), f_eval(next)) << "t = " << t;
    }
    for (double t = 4; t <= 2000; ++t) EXPECT_LT(f_eval(t), f_eval(t + 1)) << "t = " << t;
}

TEST(Inversion, SpotValues) {
    EXPECT_EQ(m_of_l(11), 15);
    EXPECT_EQ(m_of_l(8), 10);
    EXPECT_EQ(m_of_l(4), 4);
    EXPECT_THROW(m_of_l(3), std::domain_error);
}

TEST(Inversion, MatchesLinearScan) {
    for (std::int64_t l = 4; l <= 400; ++l) {
        const auto m = m_of_l(l);
        EXPECT_EQ(m, oracle::m_of_l(l)) << "l = " << l;
        EXPECT_TRUE(bracket_holds(l, m)) << "l = " << l;
    }
}

TEST(Inversion, RatioGrows) {
    double previous = 0;
    for (std::int64_t l = 10; l <= 1000000; l *= 10) {
        const auto m = m_of_l(l);
        EXPECT_TRUE(bracket_holds(l, m));
        const double ratio = static_cast<double>(m) / static_cast<double>(l);
        EXPECT_GT(ratio, previous) << "l = " << l;
        previous = ratio;
    }
}

TEST(Bound, NumericallyEqualsNMinusOne) {
    const double n = std::exp2(20);
    EXPECT_EQ(gowers_bound(n, 3), n - 1);
    EXPECT_THROW(gowers_bound(15.0, 3), std::domain_error);
    EXPECT_THROW(gowers_bound(100.0, 1), std::domain_error);
}

TEST(Bound, DeficitShrinksWithK) {
    const double n = std::exp2(40);
    for (std::int64_t k = 2; k < 8; ++k) EXPECT_GT(gowers_bound_deficit_log2(n, k), gowers_bound_deficit_log2(n, k + 1));
    EXPECT_LT(gowers_bound_deficit_log2(n, 2), -1000.0);
    EXPECT_THROW(gowers_bound_deficit_log2(16.0, 3), std::domain_error);
}

TEST(ProgressionLength, VacuousAtReachableSizes) {
    // L3 of n = 2^60 is about 1.56; k(n) is negative.
    const double l3 = log3(std::exp2(60));
    EXPECT_TRUE(is_vacuous_length(k_of_n(l3)));
    EXPECT_THROW(k_of_n(1.0), std::domain_error);
}

TEST(ProgressionLength, LogFormAgrees) {
    for (double e : {1.5, 4.0, 20.0, 300.0}) EXPECT_EQ(k_of_n(std::exp2(e)), k_of_n_from_log2(e)) << e;
    // First useful length k = 2 needs L3 = 2^4096.
    EXPECT_EQ(k_of_n_from_log2(4096.0), 2);
    EXPECT_EQ(k_of_n_from_log2(4095.0), 1);
    EXPECT_FALSE(is_vacuous_length(2));
    EXPECT_TRUE(is_vacuous_length(1));
}

TEST(Identity, ResidualIsTiny) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> l3(1e-6, 32.0);
    for (int i = 0; i < 100; ++i) EXPECT_LT(identity_check(l3(rng)), 1e-9);
    EXPECT_THROW(identity_check(0.0), std::domain_error);
}

TEST(Rows, FieldsFollowTheDomain) {
    auto small = make_row(4);
    EXPECT_EQ(small.m_l, 4);
    EXPECT_FALSE(small.bound_r3);
    EXPECT_FALSE(small.k_of_n);
    EXPECT_TRUE(small.vacuous);

    auto big = make_row(100);
    EXPECT_TRUE(big.bound_r3);
    EXPECT_TRUE(big.k_of_n);
    EXPECT_TRUE(big.vacuous);
    EXPECT_LE(big.f_at_m_l, 100.0);
}
