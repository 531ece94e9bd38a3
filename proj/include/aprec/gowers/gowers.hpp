#pragma once

// Quantitative scaffolding of the "multiply recurrent but not weakly mixing" argument:
// the growth function f, its integer inverse m_l, Gowers' bound on r_k(n), the progression
// length k(n) and the power-of-two identity used to simplify the bound.
//
// Every logarithm here is base 2. Using natural logarithms silently changes every value.

#include "aprec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace aprec::gowers {

/// log2 log2 log2 t, defined for t > 2 (and >= 0 for t >= 4).
inline double log3(double t) { return std::log2(std::log2(std::log2(t))); }

/// f(t) = t * sqrt(2)^(-sqrt(log log log t)), for t >= 4.
inline double f_eval(double t) {
    if (!(t >= 4.0)) throw std::domain_error("f_eval: requires t >= 4");
    return t * std::exp2(-0.5 * std::sqrt(log3(t)));
}

/// The integer m with f(m) <= l < f(m+1).
///
/// f is not monotone on the reals just above 4 (sqrt(log log log t) has infinite slope at
/// t = 4), but it is increasing on the integers, which is all the inversion needs. The
/// bracket [4, max(16, 4 l^2)] is doubled until f exceeds l, sampled for monotonicity, and
/// then bisected.
inline std::int64_t m_of_l(std::int64_t l) {
    if (l < 4) throw std::domain_error("m_of_l: requires l >= 4");
    const double target = static_cast<double>(l);
    std::int64_t lo = 4;
    std::int64_t hi = std::max<std::int64_t>(16, 4 * l * l);
    while (f_eval(static_cast<double>(hi)) <= target) {
        if (hi > (std::int64_t{1} << 61)) throw std::domain_error("m_of_l: l out of range");
        hi *= 2;
    }

    constexpr int samples = 64;
    double previous = f_eval(static_cast<double>(lo));
    std::int64_t previous_t = lo;
    for (int i = 1; i <= samples; ++i) {
        auto t = lo + static_cast<std::int64_t>(static_cast<double>(hi - lo) * std::pow(static_cast<double>(i) / samples, 3.0));
        if (t <= previous_t) continue;
        double value = f_eval(static_cast<double>(t));
        if (!(value > previous))
            throw monotonicity_violation("m_of_l: f not increasing between " + std::to_string(previous_t) + " and " +
                                         std::to_string(t));
        previous = value;
        previous_t = t;
    }

    // Invariant: f(lo) <= l < f(hi).
    while (hi - lo > 1) {
        auto mid = lo + (hi - lo) / 2;
        double value = f_eval(static_cast<double>(mid));
        if (value < f_eval(static_cast<double>(lo)) || value > f_eval(static_cast<double>(hi)))
            throw monotonicity_violation("m_of_l: bisection sample at " + std::to_string(mid) + " is out of order");
        if (value <= target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

/// n / (log log n)^(2^(-2^(k+9))) - 1, for n >= 16, evaluated in the log domain:
/// exp2(log2 n - 2^(-2^(k+9)) * log log log n) - 1. For every k >= 2 the correction term
/// underflows double precision, so the value equals n - 1 to the last bit; use
/// gowers_bound_deficit_log2 to see how far below n - 1 it really is.
inline double gowers_bound(double n, std::int64_t k) {
    if (!(n >= 16.0)) throw std::domain_error("gowers_bound: requires n >= 16");
    if (k < 2) throw std::domain_error("gowers_bound: requires k >= 2");
    const double exponent = std::exp2(-std::exp2(static_cast<double>(k + 9)));
    return std::exp2(std::log2(n) - exponent * log3(n)) - 1.0;
}

/// log2((n - 1) - gowers_bound(n, k)), i.e. log2(n * (1 - 2^(-e L3))) with e = 2^(-2^(k+9))
/// and L3 = log log log n, using 1 - 2^(-x) ~ x ln 2 for the astronomically small x involved.
/// Strictly decreasing in k; requires n > 16 so that L3 > 0.
inline double gowers_bound_deficit_log2(double n, std::int64_t k) {
    if (!(n > 16.0)) throw std::domain_error("gowers_bound_deficit_log2: requires n > 16");
    if (k < 2) throw std::domain_error("gowers_bound_deficit_log2: requires k >= 2");
    return std::log2(n) + std::log2(log3(n) * std::log(2.0)) - std::exp2(static_cast<double>(k + 9));
}

/// k(n) = [log log sqrt(log log log n) - 9], taking L3 = log log log n as input so that the
/// astronomically large n with k(n) >= 1 stay expressible.
inline std::int64_t k_of_n(double l3) {
    if (!(l3 > 1.0)) throw std::domain_error("k_of_n: requires log log log n > 1");
    return static_cast<std::int64_t>(std::floor(std::log2(std::log2(std::sqrt(l3))) - 9.0));
}

/// k(n) from log2(L3), for L3 itself beyond double range (e.g. L3 = 2^(2^10)).
inline std::int64_t k_of_n_from_log2(double log2_l3) {
    if (!(log2_l3 > 0.0)) throw std::domain_error("k_of_n: requires log log log n > 1");
    return static_cast<std::int64_t>(std::floor(std::log2(0.5 * log2_l3) - 9.0));
}

/// A progression length k(n) <= 1 says nothing.
inline bool is_vacuous_length(std::int64_t k) { return k <= 1; }

/// Relative residual of (log log n)^(1/sqrt(L3)) = 2^sqrt(L3) with log log n = 2^L3.
inline double identity_check(double l3) {
    if (!(l3 > 0.0)) throw std::domain_error("identity_check: requires L3 > 0");
    const double l2 = std::exp2(l3);
    const double lhs = std::pow(l2, 1.0 / std::sqrt(l3));
    const double rhs = std::exp2(std::sqrt(l3));
    return std::abs(lhs - rhs) / rhs;
}

/// One row of the quantitative table. Fields that are undefined at small n (the bound needs
/// n >= 16, k(n) needs n > 16) are empty; an empty k_of_n counts as vacuous.
struct gowers_row {
    std::int64_t l = 0;
    std::int64_t m_l = 0;
    double f_at_m_l = 0;
    std::optional<double> bound_r3;
    std::optional<std::int64_t> k_of_n;
    bool vacuous = true;
};

inline gowers_row make_row(std::int64_t l) {
    gowers_row row;
    row.l = l;
    row.m_l = m_of_l(l);
    const auto n = static_cast<double>(row.m_l);
    row.f_at_m_l = f_eval(n);
    if (n >= 16.0) row.bound_r3 = gowers_bound(n, 3);
    if (n > 16.0) row.k_of_n = k_of_n(log3(n));
    row.vacuous = !row.k_of_n || is_vacuous_length(*row.k_of_n);
    return row;
}

/// f(m) <= l < f(m+1), with 1e-9 relative slack on both sides.
inline bool bracket_holds(std::int64_t l, std::int64_t m, double rel_tol = 1e-9) {
    const double target = static_cast<double>(l);
    return f_eval(static_cast<double>(m)) <= target * (1 + rel_tol) &&
           f_eval(static_cast<double>(m + 1)) > target * (1 - rel_tol);
}

}  // namespace aprec::gowers
