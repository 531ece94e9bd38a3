#pragma once

// Finite stages of the nested-ball construction of a multiply recurrent point: U_0 = U and,
// at stage s, a witness x_s for s-fold recurrence in U_{s-1} with step q_s, and a ball U_s
// around x_s small enough that T^{j q_s}(U_s) stays inside U_{s-1} for all j <= s.

#include "aprec/lab/multirec.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace aprec {

struct nested_stage {
    ball region;
    std::optional<std::int64_t> q;  // empty for stage 0
};

struct nested_result {
    std::vector<nested_stage> stages;
    finite_vector point;                       // centre of the last constructed ball
    std::optional<std::int64_t> failed_stage;  // inconclusive: no witness within q_max
};

/// Radii are halved at least once per stage (more when the operator-norm bound sup w^{jq}
/// demands it), so they tend to zero.
inline nested_result nested_ball_refinement(const weight_spec& w, const space_spec& space, const ball& u,
                                            std::int64_t stages, std::int64_t q_max) {
    if (stages < 0) throw std::invalid_argument("nested_ball_refinement: stage count must be non-negative");
    const auto op = make_backward(w, space);
    const auto norm_bound = w.bound();

    nested_result result;
    result.stages.push_back({u, std::nullopt});
    result.point = u.center;
    ball current = u;
    for (std::int64_t s = 1; s <= stages; ++s) {
        auto witness = multirec_witness(w, space, current, s, q_max);
        if (!witness) {
            result.failed_stage = s;
            return result;
        }
        // Largest r = r_prev / 2^t (t >= 1) with ||T^{jq} x - c_prev|| + r * bound^{jq} < r_prev.
        rational radius = current.radius / 2;
        for (;;) {
            bool fits = true;
            for (std::int64_t j = 0; j <= s && fits; ++j) {
                const auto slack = current.radius - radius * pow(norm_bound, j * witness->q);
                fits = slack > 0 && in_ball(apply_power(op, witness->x, j * witness->q), ball(current.center, slack, space));
            }
            if (fits) break;
            radius /= 2;
        }
        current = ball(witness->x, radius, space);
        result.stages.push_back({current, witness->q});
        result.point = witness->x;
    }
    return result;
}

}  // namespace aprec
