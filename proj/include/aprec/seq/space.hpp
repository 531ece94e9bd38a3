#pragma once

// The ambient l_p spaces (p in {1, 2, inf}), their norms and open balls.
//
// Open sets are represented only by balls around finitely supported rational centres. These
// form a basis of the topology, so every recurrence statement quantified over open sets can
// be checked on them, and membership is decided exactly.

#include "aprec/seq/vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aprec {

enum class lp { one, two, inf };
enum class laterality { unilateral, bilateral };

struct space_spec {
    lp p = lp::one;
    laterality side = laterality::unilateral;

    friend bool operator==(const space_spec&, const space_spec&) = default;
};

inline std::string to_string(lp p) {
    switch (p) {
        case lp::one: return "1";
        case lp::two: return "2";
        case lp::inf: return "inf";
    }
    return "?";
}

inline std::string to_string(laterality side) { return side == laterality::unilateral ? "unilateral" : "bilateral"; }

/// A norm value. For l_2 in exact mode the square is kept (`squared`), since square roots
/// of rationals are not rational.
template <class S>
struct norm_value {
    S value{};
    bool squared = false;

    double approx() const {
        double v = to_double_any(value);
        return squared ? std::sqrt(v) : v;
    }

    /// Strictly below `radius`.
    bool less_than(const S& radius) const { return squared ? value < radius * radius : value < radius; }

private:
    static double to_double_any(const S& v) {
        if constexpr (scalar_traits<S>::exact)
            return to_double(v);
        else
            return v;
    }
};

template <class S>
S l1_norm(const basic_finite_vector<S>& x) {
    S sum(0);
    for (const auto& [n, c] : x.entries()) sum += scalar_traits<S>::abs(c);
    return sum;
}

template <class S>
S l2_norm_squared(const basic_finite_vector<S>& x) {
    S sum(0);
    for (const auto& [n, c] : x.entries()) sum += c * c;
    return sum;
}

template <class S>
S sup_norm(const basic_finite_vector<S>& x) {
    S best(0);
    for (const auto& [n, c] : x.entries()) {
        S a = scalar_traits<S>::abs(c);
        if (a > best) best = a;
    }
    return best;
}

/// ||x||_p. Exact l_2 values come back squared; float l_2 values are square-rooted.
template <class S>
norm_value<S> norm(const basic_finite_vector<S>& x, lp p) {
    switch (p) {
        case lp::one: return {l1_norm(x), false};
        case lp::two:
            if constexpr (scalar_traits<S>::exact)
                return {l2_norm_squared(x), true};
            else
                return {std::sqrt(l2_norm_squared(x)), false};
        case lp::inf: return {sup_norm(x), false};
    }
    throw std::logic_error("norm: unknown p");
}

/// Rejects negative indices in a unilateral space.
template <class S>
void check_laterality(const basic_finite_vector<S>& x, laterality side) {
    if (side == laterality::unilateral) {
        auto lo = x.min_index();
        if (lo && *lo < 0) throw std::invalid_argument("vector has a negative index in a unilateral space");
    }
}

/// Open ball { x : ||x - center||_p < radius }.
template <class S>
struct basic_ball {
    basic_finite_vector<S> center;
    S radius{1};
    space_spec space{};

    basic_ball() = default;
    basic_ball(basic_finite_vector<S> c, S r, space_spec s) : center(std::move(c)), radius(std::move(r)), space(s) {
        if (!(radius > S(0))) throw std::invalid_argument("ball radius must be positive");
        check_laterality(center, space.side);
    }

    template <class T>
    basic_ball<T> convert() const {
        if constexpr (std::is_same_v<S, rational>)
            return {center.template convert<T>(), scalar_traits<T>::from_rational(radius), space};
        else
            return {center.template convert<T>(), static_cast<T>(radius), space};
    }
};

using ball = basic_ball<rational>;
using float_ball = basic_ball<double>;

/// Relative tolerance for float-mode ball membership: a point counts as inside only when
/// its distance is below radius * (1 - float_ball_tolerance).
inline constexpr double float_ball_tolerance = 1e-9;

template <class S>
bool in_ball(const basic_finite_vector<S>& x, const basic_ball<S>& u) {
    check_laterality(x, u.space.side);
    auto distance = norm(x - u.center, u.space.p);
    if constexpr (scalar_traits<S>::exact)
        return distance.less_than(u.radius);
    else
        return distance.value < u.radius * (1.0 - float_ball_tolerance);
}

}  // namespace aprec
