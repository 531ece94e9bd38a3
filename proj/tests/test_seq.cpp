#include "aprec/aprec.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace aprec;

namespace {

finite_vector random_vector(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, int terms) {
    std::uniform_int_distribution<std::int64_t> index(lo, hi), num(-9, 9), den(1, 7);
    finite_vector v;
    for (int i = 0; i < terms; ++i) v.add(index(rng), rational(num(rng), den(rng)));
    return v;
}

weight_spec random_weights(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 3), num(1, 5), den(1, 4);
    switch (kind(rng)) {
        case 0: return weight_spec::unit();
        case 1: return weight_spec::constant(rational(num(rng), den(rng)));
        case 2: {
            std::vector<rational> w;
            for (int i = 0; i < 200; ++i) w.emplace_back(num(rng), den(rng));
            return weight_spec::explicit_list(w);
        }
        default: return weight_spec::valley(2);
    }
}

}  // namespace

TEST(Rational, ParseAndFormat) {
    EXPECT_EQ(format_rational(parse_rational("3/6")), "1/2");
    EXPECT_EQ(format_rational(parse_rational("-2")), "-2/1");
    EXPECT_EQ(format_rational(parse_rational("+4/-8")), "-1/2");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, Powers) {
    EXPECT_EQ(pow(rational(2, 3), 3), rational(8, 27));
    EXPECT_EQ(pow(rational(2, 3), -2), rational(9, 4));
    EXPECT_EQ(pow2(-3), rational(1, 8));
    EXPECT_EQ(pow2(70), rational(integer(1) << 70));
}

TEST(Vector, Arithmetic) {
    auto x = finite_vector::basis(2, rational(1, 2)) + finite_vector::basis(5);
    auto y = finite_vector::basis(2, rational(-1, 2));
    auto z = x + y;
    EXPECT_EQ(z, finite_vector::basis(5));
    EXPECT_EQ(z.support_size(), 1u);
    EXPECT_TRUE((x - x).is_zero());
    EXPECT_EQ(rational(2) * x, x + x);
    EXPECT_EQ(*x.max_index(), 5);
    EXPECT_EQ(*x.min_index(), 2);
    EXPECT_FALSE(finite_vector().max_index());
}

TEST(Norms, Values) {
    finite_vector x;
    x.add(0, rational(3));
    x.add(4, rational(-4));
    EXPECT_EQ(norm(x, lp::one).value, 7);
    auto two = norm(x, lp::two);
    EXPECT_TRUE(two.squared);
    EXPECT_EQ(two.value, 25);
    EXPECT_DOUBLE_EQ(two.approx(), 5.0);
    EXPECT_EQ(norm(x, lp::inf).value, 4);
    EXPECT_EQ(norm(x.convert<double>(), lp::two).value, 5.0);
}

TEST(Norms, TriangleInequality) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        auto x = random_vector(rng, 0, 20, 6), y = random_vector(rng, 0, 20, 6);
        EXPECT_LE(norm(x + y, lp::one).value, norm(x, lp::one).value + norm(y, lp::one).value);
        EXPECT_LE(norm(x + y, lp::inf).value, norm(x, lp::inf).value + norm(y, lp::inf).value);
        // Squared form: |x+y|^2 <= |x|^2 + |y|^2 + 2 |x| |y|, with the cross term bounded exactly
        // via (2 <x,y>)^2 <= 4 |x|^2 |y|^2.
        const auto a = norm(x, lp::two).value, b = norm(y, lp::two).value, s = norm(x + y, lp::two).value;
        const auto cross = s - a - b;
        EXPECT_TRUE(cross <= 0 || cross * cross <= 4 * a * b);
    }
}

TEST(Ball, OpenAndValidated) {
    ball u(finite_vector::basis(0), rational(1, 4), {});
    EXPECT_TRUE(in_ball(finite_vector::basis(0), u));
    auto edge = finite_vector::basis(0) + finite_vector::basis(3, rational(1, 4));
    EXPECT_FALSE(in_ball(edge, u));
    EXPECT_THROW(ball(finite_vector(), rational(0), {}), std::invalid_argument);
    EXPECT_THROW(ball(finite_vector::basis(-1), rational(1), {}), std::invalid_argument);
    EXPECT_NO_THROW(ball(finite_vector::basis(-1), rational(1), {lp::one, laterality::bilateral}));
}

TEST(Ball, FloatToleranceExcludesNearBoundary) {
    float_ball u(float_vector::basis(0), 1.0, {});
    EXPECT_FALSE(in_ball(float_vector::basis(0) + float_vector::basis(1, 1.0 - 1e-12), u));
    EXPECT_TRUE(in_ball(float_vector::basis(0) + float_vector::basis(1, 0.999), u));
}

TEST(Weights, ConstantAndExplicit) {
    auto c = weight_spec::constant(2);
    EXPECT_EQ(c.product(3), rational(1, 8));
    EXPECT_EQ(c.ratio(-2, 1), rational(1, 8));
    auto e = weight_spec::explicit_list({rational(2), rational(1, 3), rational(5)});
    EXPECT_EQ(e.product(3), rational(3, 10));
    EXPECT_EQ(e.ratio(1, 3), rational(3, 5));
    EXPECT_THROW(e.product(4), std::out_of_range);
    EXPECT_THROW(weight_spec::constant(0), std::invalid_argument);
    EXPECT_THROW(weight_spec::explicit_list({rational(-1)}), std::invalid_argument);
}

TEST(Weights, ValleyMatchesStampedProfile) {
    const auto w = weight_spec::valley(3);
    const std::int64_t horizon = 3 * 720 + 10;
    const auto g = oracle::valley_profile(3, horizon);
    for (std::int64_t n = 0; n <= horizon; ++n) {
        ASSERT_EQ(w.valley_profile(n), g[static_cast<std::size_t>(n)]) << "n = " << n;
        EXPECT_EQ(w.product(n), pow2(-g[static_cast<std::size_t>(n)]));
        if (n >= 1) {
            auto wn = w.weight(n);
            EXPECT_TRUE(wn == rational(1, 2) || wn == 1 || wn == 2) << "n = " << n;
        }
    }
    EXPECT_EQ(w.bound(), 2);
}

TEST(Weights, ValleyFloors) {
    const auto w = weight_spec::valley(3);
    for (std::int64_t m = 1; m <= 3; ++m) {
        const auto q = weight_spec::valley_step(m);
        for (std::int64_t j = 1; j <= m; ++j)
            for (std::int64_t p = 0; p <= m; ++p) EXPECT_EQ(w.product(j * q + p), pow2(-m));
    }
    EXPECT_EQ(weight_spec::valley_step(1), 24);
    EXPECT_EQ(weight_spec::valley_step(3), 720);
    EXPECT_EQ(w.product(100), 1);
    EXPECT_THROW(weight_spec::valley(0), std::invalid_argument);
}

TEST(Scalars, Values) {
    auto d = scalar_seq::dyadic_sqrt();
    EXPECT_EQ(d.exact(0), 1);
    EXPECT_EQ(d.exact(1), 2);
    EXPECT_EQ(d.exact(4), 4);
    EXPECT_EQ(d.exact(5), 8);
    EXPECT_EQ(d.exact(16), 16);
    EXPECT_EQ(d.exact(17), 32);
    auto e = scalar_seq::exp_sqrt();
    EXPECT_FALSE(e.is_exact());
    EXPECT_THROW(e.value<rational>(3), mode_mismatch);
    EXPECT_NEAR(e.value<double>(4), std::exp(2.0), 1e-12);
    auto l = scalar_seq::explicit_list({rational(3), rational(5)});
    EXPECT_EQ(l.exact(0), 1);
    EXPECT_EQ(l.exact(2), 5);
    EXPECT_THROW(l.exact(3), std::out_of_range);
}

TEST(Operators, ClosedFormMatchesStepping) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> power(0, 12);
    for (int i = 0; i < 200; ++i) {
        const auto w = random_weights(rng);
        const auto x = random_vector(rng, 0, 30, 5);
        const auto n = power(rng);
        EXPECT_EQ(apply_power(make_backward(w), x, n), oracle::backward_power(w, x, n));
    }
}

TEST(Operators, SemigroupAndLinearity) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::int64_t> power(0, 8);
    for (int i = 0; i < 100; ++i) {
        const auto w = random_weights(rng);
        for (const auto& op : {make_backward(w), make_forward(w)}) {
            const auto x = random_vector(rng, 0, 20, 4), y = random_vector(rng, 0, 20, 4);
            const auto a = power(rng), b = power(rng);
            EXPECT_EQ(apply_power(op, x, a + b), apply_power(op, apply_power(op, x, a), b));
            const rational c(3, 7);
            EXPECT_EQ(apply_power(op, c * x + y, a), c * apply_power(op, x, a) + apply_power(op, y, a));
        }
    }
}

TEST(Operators, ForwardIsRightInverse) {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 100; ++i) {
        const auto w = random_weights(rng);
        const auto x = random_vector(rng, 0, 20, 4);
        EXPECT_EQ(apply_power(make_backward(w), apply_power(make_forward(w), x, 7), 7), x);
    }
}

TEST(Operators, BilateralShiftsAreInvertible) {
    const space_spec two_sided{lp::one, laterality::bilateral};
    const auto op = make_backward(weight_spec::constant(rational(3, 2)), two_sided);
    ASSERT_TRUE(is_invertible(op));
    const auto inv = inverse(op);
    finite_vector x;
    x.add(-3, rational(1, 2));
    x.add(4, rational(2));
    EXPECT_EQ(apply_power(inv, apply_power(op, x, 5), 5), x);
    EXPECT_EQ(apply_power(op, apply_power(inv, x, 5), 5), x);
    EXPECT_FALSE(is_invertible(make_backward()));
    EXPECT_THROW(make_backward(weight_spec::valley(1), two_sided), std::invalid_argument);
}

TEST(Operators, PowerAndScaledCoherence) {
    const auto t = make_backward(weight_spec::constant(2));
    const auto x = finite_vector::basis(9) + finite_vector::basis(4, rational(1, 3));
    for (std::int64_t n = 0; n <= 4; ++n) {
        EXPECT_EQ(apply_power(make_power(2, t), x, n), apply_power(t, x, 2 * n));
        EXPECT_EQ(apply_power(make_scaled(-1, t), x, n), pow(rational(-1), n) * apply_power(t, x, n));
    }
}

TEST(Operators, DirectSumActsPerComponent) {
    const auto b = make_backward(weight_spec::constant(2));
    const auto f = make_forward();
    const auto sum = make_direct_sum({b, f});
    // Index 2i holds component 0 at i, index 2i+1 holds component 1 at i.
    finite_vector x;
    x.add(6, 1);  // component 0, e_3
    x.add(7, 1);  // component 1, e_3
    finite_vector expected;
    expected.add(4, 2);  // B_2 e_3 = 2 e_2
    expected.add(9, 1);  // F e_3 = e_4
    EXPECT_EQ(aprec::apply(sum, x), expected);
}

TEST(Iterate, ScaledSequence) {
    const auto seq = map_sequence::scaled_iterates(scalar_seq::dyadic_sqrt(), make_backward());
    EXPECT_EQ(iterate(seq, finite_vector::basis(5), 5), finite_vector::basis(0, rational(8)));
    const auto fseq = map_sequence::scaled_iterates(scalar_seq::exp_sqrt(), make_backward());
    EXPECT_THROW(iterate(fseq, finite_vector::basis(5), 1), mode_mismatch);
    EXPECT_NO_THROW(iterate(fseq, float_vector::basis(5), 1));
}
