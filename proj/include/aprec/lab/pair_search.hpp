#pragma once

// Finite search for the two-point form of "weakly mixing and multiply recurrent": points
// x_1, x_2 in U and a, q with T^{a+jq} x_i in V_i for every j <= m.
//
// Candidates are x_i = u + L_a(z_i) where z_i is the lift-sum for V_i's centre at step q, so
// that T^a x_i = T^a u + z_i and the recurrence part is handled as in multirec_witness.

#include "aprec/lab/multirec.hpp"
#include "aprec/lab/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace aprec {

struct pair_bounds {
    std::int64_t a_max = 1;
    std::int64_t q_max = 1;
};

/// Scans a = 1..a_max (outer) and q = 1..q_max (inner), q beyond both V-centre supports.
/// Returned tuples are verified membership by membership; nullopt is inconclusive.
inline std::optional<pair_witness> weak_mixing_pair_search(const weight_spec& w, const space_spec& space, const ball& u,
                                                           const ball& v1, const ball& v2, std::int64_t m,
                                                           pair_bounds bounds) {
    if (m < 0) throw std::invalid_argument("weak_mixing_pair_search: m must be non-negative");
    if (space.side != laterality::unilateral)
        throw std::invalid_argument("weak_mixing_pair_search: unilateral backward shifts only");
    const auto op = make_backward(w, space);
    const auto lift = make_forward(w, space);
    auto support_end = [](const finite_vector& v) -> std::int64_t { return v.max_index() ? *v.max_index() + 1 : 1; };
    const std::int64_t q_start = std::max({std::int64_t{1}, support_end(v1.center), support_end(v2.center)});

    for (std::int64_t a = 1; a <= bounds.a_max; ++a) {
        for (std::int64_t q = q_start; q <= bounds.q_max; ++q) {
            pair_witness candidate;
            try {
                candidate.x1 = u.center + apply_power(lift, lift_sum(w, space, v1.center, q, m), a);
                candidate.x2 = u.center + apply_power(lift, lift_sum(w, space, v2.center, q, m), a);
            } catch (const std::out_of_range&) {
                continue;  // explicit weights exhausted for this (a, q)
            }
            candidate.a = a;
            candidate.q = q;
            candidate.m = m;
            if (!in_ball(candidate.x1, u) || !in_ball(candidate.x2, u)) continue;
            if (verify_pair(op, u, v1, v2, candidate)) return candidate;
        }
    }
    return std::nullopt;
}

}  // namespace aprec
