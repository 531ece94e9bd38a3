#pragma once

// Finite check of the progression criterion for weighted backward shifts: B_w is multiply
// recurrent iff for every eps, p and m there is a step q with
//     ||lift of e_p to e_{jq+p}|| = prod_{l=p+1}^{jq+p} w_l^{-1} < eps   for 1 <= j <= m.
// A fully populated grid is evidence for the criterion, not a proof of it; an empty cell is
// inconclusive.

#include "aprec/rational.hpp"
#include "aprec/seq/space.hpp"
#include "aprec/seq/weights.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

namespace aprec {

struct criterion_bounds {
    std::int64_t p_max = 0;
    std::int64_t m_max = 1;
    std::int64_t q_max = 1;
};

struct criterion_report {
    /// (p, m) -> smallest q, for 0 <= p <= p_max and 1 <= m <= m_max. p = 0 is included
    /// although the basis position in the criterion may be meant to start at 1.
    std::map<std::pair<std::int64_t, std::int64_t>, std::optional<std::int64_t>> grid;
    rational epsilon;
    criterion_bounds bounds;

    bool fully_populated() const {
        for (const auto& [key, q] : grid)
            if (!q) return false;
        return true;
    }
};

/// Exact test of a single (p, m, q) cell.
inline bool criterion_cell_holds(const weight_spec& w, const rational& eps, std::int64_t p, std::int64_t m,
                                 std::int64_t q) {
    auto limit = w.accessible_limit();
    for (std::int64_t j = 1; j <= m; ++j) {
        const auto n = j * q + p;
        if (limit && n > *limit) return false;
        if (!(w.ratio(p, n) < eps)) return false;
    }
    return true;
}

inline criterion_report shift_ap_criterion(const weight_spec& w, const space_spec& space, const rational& eps,
                                           criterion_bounds bounds) {
    if (!(eps > 0)) throw std::invalid_argument("shift_ap_criterion: epsilon must be positive");
    if (bounds.p_max < 0 || bounds.m_max < 1 || bounds.q_max < 1)
        throw std::invalid_argument("shift_ap_criterion: need p_max >= 0, m_max >= 1, q_max >= 1");
    if (space.side != laterality::unilateral)
        throw std::invalid_argument("shift_ap_criterion: unilateral backward shifts only");
    criterion_report report;
    report.epsilon = eps;
    report.bounds = bounds;
    for (std::int64_t p = 0; p <= bounds.p_max; ++p)
        for (std::int64_t m = 1; m <= bounds.m_max; ++m) {
            std::optional<std::int64_t> found;
            for (std::int64_t q = 1; q <= bounds.q_max && !found; ++q)
                if (criterion_cell_holds(w, eps, p, m, q)) found = q;
            report.grid[{p, m}] = found;
        }
    return report;
}

}  // namespace aprec
