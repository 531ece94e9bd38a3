#pragma once

#include "aprec/ap/hit_set.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace aprec {

/// The union over m = 1..M of { l * q_m : 1 <= l <= m }. It contains the homogeneous
/// progression {q_M, 2 q_M, ..., M q_M}, so a sequence of steps along which basis vectors
/// shrink turns into a set with arbitrarily long progressions whose first term is the step.
inline hit_set homogeneous_progression_union(const std::vector<std::int64_t>& steps) {
    if (steps.empty()) throw std::invalid_argument("homogeneous_progression_union: need at least one step");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto q = steps[i];
        if (q < 1) throw std::invalid_argument("homogeneous_progression_union: steps must be positive");
        const auto m = static_cast<std::int64_t>(i) + 1;
        for (std::int64_t l = 1; l <= m; ++l) out.push_back(l * q);
    }
    return hit_set(std::move(out));
}

}  // namespace aprec
