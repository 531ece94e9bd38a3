#pragma once

// Algebraic descriptions of operators on sequence spaces (weighted shifts, scalings, powers,
// direct sums) and of operator sequences n -> lambda_n T^n, with exact evaluation on finitely
// supported vectors.
//
// Conventions: B_w e_n = w_n e_{n-1} (e_0 -> 0 on unilateral spaces) and F_w e_n =
// w_{n+1}^{-1} e_{n+1}, so F_w is a right inverse of B_w (and a two-sided one on bilateral
// spaces). A direct sum of r components interleaves coordinates: global index i belongs to
// component i mod r at local index floor(i / r).

#include "aprec/seq/scalars.hpp"
#include "aprec/seq/space.hpp"
#include "aprec/seq/vector.hpp"
#include "aprec/seq/weights.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

namespace aprec {

struct operator_spec;
using operator_ptr = std::shared_ptr<const operator_spec>;

struct backward_shift {
    weight_spec weights;
    space_spec space;
};

struct forward_shift {
    weight_spec weights;
    space_spec space;
};

struct scaled_operator {
    rational scalar;
    operator_ptr inner;
};

struct power_operator {
    std::int64_t exponent = 1;
    operator_ptr inner;
};

struct direct_sum_operator {
    std::vector<operator_ptr> components;
};

struct operator_spec {
    std::variant<backward_shift, forward_shift, scaled_operator, power_operator, direct_sum_operator> node;
};

namespace detail {

inline void check_shift(const weight_spec& w, const space_spec& space) {
    if (space.side == laterality::bilateral && !w.is_uniform())
        throw std::invalid_argument("bilateral shifts need unit or constant weights");
}

}  // namespace detail

inline operator_spec make_backward(weight_spec w = weight_spec::unit(), space_spec space = {}) {
    detail::check_shift(w, space);
    return {backward_shift{std::move(w), space}};
}

inline operator_spec make_forward(weight_spec w = weight_spec::unit(), space_spec space = {}) {
    detail::check_shift(w, space);
    return {forward_shift{std::move(w), space}};
}

inline operator_spec make_scaled(rational scalar, operator_spec inner) {
    if (scalar == 0) throw std::invalid_argument("scaling by zero");
    return {scaled_operator{std::move(scalar), std::make_shared<const operator_spec>(std::move(inner))}};
}

inline operator_spec make_power(std::int64_t exponent, operator_spec inner) {
    if (exponent < 1) throw std::invalid_argument("power exponent must be >= 1");
    return {power_operator{exponent, std::make_shared<const operator_spec>(std::move(inner))}};
}

inline operator_spec make_direct_sum(std::vector<operator_spec> components) {
    if (components.empty()) throw std::invalid_argument("direct sum needs at least one component");
    direct_sum_operator sum;
    for (auto& c : components) sum.components.push_back(std::make_shared<const operator_spec>(std::move(c)));
    return {std::move(sum)};
}

/// Laterality of the underlying shifts; mixed direct sums are rejected.
inline laterality operator_laterality(const operator_spec& op) {
    return std::visit(
        [](const auto& node) -> laterality {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, backward_shift> || std::is_same_v<T, forward_shift>)
                return node.space.side;
            else if constexpr (std::is_same_v<T, direct_sum_operator>) {
                auto side = operator_laterality(*node.components.front());
                for (const auto& c : node.components)
                    if (operator_laterality(*c) != side) throw std::invalid_argument("direct sum mixes lateralities");
                return side;
            } else
                return operator_laterality(*node.inner);
        },
        op.node);
}

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    auto q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace detail

/// T^n x, exactly (or in floating point for S = double). Shift powers are evaluated in
/// closed form through weight ratios rather than n single steps.
template <class S>
basic_finite_vector<S> apply_power(const operator_spec& op, const basic_finite_vector<S>& x, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("negative operator power");
    if (n == 0) return x;
    return std::visit(
        [&](const auto& node) -> basic_finite_vector<S> {
            using T = std::decay_t<decltype(node)>;
            basic_finite_vector<S> out;
            if constexpr (std::is_same_v<T, backward_shift>) {
                check_laterality(x, node.space.side);
                for (const auto& [k, c] : x.entries()) {
                    const auto target = k - n;
                    if (node.space.side == laterality::unilateral && target < 0) continue;
                    // B^n e_k = (w_{k-n+1} ... w_k) e_{k-n} = (a_{k-n} / a_k) e_{k-n}
                    out.add(target, c * scalar_traits<S>::from_rational(1 / node.weights.ratio(target, k)));
                }
            } else if constexpr (std::is_same_v<T, forward_shift>) {
                check_laterality(x, node.space.side);
                for (const auto& [k, c] : x.entries())
                    out.add(k + n, c * scalar_traits<S>::from_rational(node.weights.ratio(k, k + n)));
            } else if constexpr (std::is_same_v<T, scaled_operator>) {
                out = apply_power(*node.inner, x, n);
                out *= scalar_traits<S>::from_rational(pow(node.scalar, n));
            } else if constexpr (std::is_same_v<T, power_operator>) {
                out = apply_power(*node.inner, x, node.exponent * n);
            } else {
                const auto r = static_cast<std::int64_t>(node.components.size());
                std::vector<basic_finite_vector<S>> parts(static_cast<std::size_t>(r));
                for (const auto& [k, c] : x.entries())
                    parts[static_cast<std::size_t>(detail::floor_mod(k, r))].add(detail::floor_div(k, r), c);
                for (std::int64_t i = 0; i < r; ++i) {
                    auto image = apply_power(*node.components[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(i)], n);
                    for (const auto& [k, c] : image.entries()) out.add(k * r + i, c);
                }
            }
            return out;
        },
        op.node);
}

template <class S>
basic_finite_vector<S> apply(const operator_spec& op, const basic_finite_vector<S>& x) {
    return apply_power(op, x, 1);
}

/// Whether `op` is invertible within this algebra (bilateral shifts and what is built from them).
inline bool is_invertible(const operator_spec& op) {
    return std::visit(
        [](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, backward_shift> || std::is_same_v<T, forward_shift>)
                return node.space.side == laterality::bilateral;
            else if constexpr (std::is_same_v<T, direct_sum_operator>) {
                for (const auto& c : node.components)
                    if (!is_invertible(*c)) return false;
                return true;
            } else
                return is_invertible(*node.inner);
        },
        op.node);
}

inline operator_spec inverse(const operator_spec& op) {
    if (!is_invertible(op)) throw std::invalid_argument("operator is not invertible (unilateral shift)");
    return std::visit(
        [](const auto& node) -> operator_spec {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, backward_shift>)
                return make_forward(node.weights, node.space);
            else if constexpr (std::is_same_v<T, forward_shift>)
                return make_backward(node.weights, node.space);
            else if constexpr (std::is_same_v<T, scaled_operator>)
                return make_scaled(1 / node.scalar, inverse(*node.inner));
            else if constexpr (std::is_same_v<T, power_operator>)
                return make_power(node.exponent, inverse(*node.inner));
            else {
                std::vector<operator_spec> parts;
                for (const auto& c : node.components) parts.push_back(inverse(*c));
                return make_direct_sum(std::move(parts));
            }
        },
        op.node);
}

/// n -> lambda_n T^n; plain iterates when the scalars are all one.
struct map_sequence {
    operator_spec op;
    scalar_seq scalars = scalar_seq::one();

    static map_sequence iterates(operator_spec op) { return {std::move(op), scalar_seq::one()}; }
    static map_sequence scaled_iterates(scalar_seq scalars, operator_spec op) { return {std::move(op), std::move(scalars)}; }
};

/// lambda_n T^n x with lambda_0 = 1. Exact S with float-only scalars throws mode_mismatch.
template <class S>
basic_finite_vector<S> iterate(const map_sequence& seq, const basic_finite_vector<S>& x, std::int64_t n) {
    if (scalar_traits<S>::exact && !seq.scalars.is_exact())
        throw mode_mismatch("float-only scalars requested in exact mode");
    auto image = apply_power(seq.op, x, n);
    if (!seq.scalars.is_one()) image *= seq.scalars.template value<S>(n);
    return image;
}

}  // namespace aprec
