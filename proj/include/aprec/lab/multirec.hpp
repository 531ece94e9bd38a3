#pragma once

// Constructive multiple recurrence for weighted backward shifts.
//
// For a ball U around y and a step q beyond the support of y, the lift-sum
//     x = y + L_q(y) + L_q^2(y) + ... + L_q^m(y),   L_q = F_w^q (so B_w^q L_q = id),
// satisfies B_w^{jq} x = y + L_q(y) + ... + L_q^{m-j}(y). It lies in U for every j <= m as
// soon as the lifts are small, which is exactly what small basis sizes along q, 2q, ... buy.

#include "aprec/lab/witness.hpp"
#include "aprec/seq/operator.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace aprec {

/// y + L_q(y) + ... + L_q^m(y).
inline finite_vector lift_sum(const weight_spec& w, const space_spec& space, const finite_vector& y, std::int64_t q,
                              std::int64_t m) {
    const auto lift = make_forward(w, space);
    finite_vector x = y;
    finite_vector term = y;
    for (std::int64_t j = 1; j <= m; ++j) {
        term = apply_power(lift, term, q);
        x += term;
    }
    return x;
}

/// Smallest step q <= q_max (q beyond the support of U's centre) whose lift-sum candidate
/// passes all m+1 memberships. Returned witnesses are verified; nullopt is inconclusive.
inline std::optional<recurrence_witness> multirec_witness(const weight_spec& w, const space_spec& space, const ball& u,
                                                          std::int64_t m, std::int64_t q_max) {
    if (m < 0) throw std::invalid_argument("multirec_witness: m must be non-negative");
    if (space.side != laterality::unilateral)
        throw std::invalid_argument("multirec_witness: unilateral backward shifts only");
    const auto op = make_backward(w, space);
    const auto& y = u.center;
    const std::int64_t q_start = y.max_index() ? *y.max_index() + 1 : 1;
    for (std::int64_t q = std::max<std::int64_t>(q_start, 1); q <= q_max; ++q) {
        finite_vector x;
        try {
            x = lift_sum(w, space, y, q, m);
        } catch (const std::out_of_range&) {
            break;  // explicit weights exhausted
        }
        if (!in_ball(x, u)) continue;
        auto memberships = recurrence_memberships(op, u, x, q, m);
        bool all = true;
        for (bool b : memberships) all = all && b;
        if (all) return recurrence_witness{q, std::move(x), m, std::move(memberships)};
    }
    return std::nullopt;
}

}  // namespace aprec
