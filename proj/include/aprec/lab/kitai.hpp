#pragma once

// Evidence for the progression form of Kitai's criterion on finitely supported vectors:
// along a candidate sequence (m_k), backward iterates B^{m_k} e_j must vanish (automatic on
// finite supports once m_k > j) and forward lifts L^{m_k} e_j must tend to 0, while (m_k)
// carries arbitrarily long progressions {q, 2q, ..., mq}.

#include "aprec/ap/hit_set.hpp"
#include "aprec/ap/progressions.hpp"
#include "aprec/rational.hpp"
#include "aprec/seq/space.hpp"
#include "aprec/seq/weights.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace aprec {

struct kitai_row {
    std::int64_t probe = 0;  // j of e_j
    std::int64_t n = 0;
    rational backward_norm;  // ||B_w^n e_j||
    rational lift_norm;      // ||F_w^n e_j|| = prod_{l=j+1}^{j+n} w_l^{-1}
};

struct kitai_report {
    std::vector<kitai_row> rows;
    rational tail_max_lift;             // max lift norm over the second half of the sequence
    std::int64_t homogeneous_length = 0;  // largest m <= cap with {q, ..., mq} in the sequence
    rational tolerance;
    bool lifts_vanish = false;          // tail_max_lift < tolerance
};

struct kitai_options {
    rational tolerance = rational(1, 100);
    std::int64_t max_homogeneous_length = 16;
};

inline kitai_report kitai_ap_check(const weight_spec& w, const space_spec& space, const hit_set& seq,
                                   const std::vector<std::int64_t>& probes, kitai_options options = {}) {
    if (space.side != laterality::unilateral) throw std::invalid_argument("kitai_ap_check: unilateral shifts only");
    if (probes.empty()) throw std::invalid_argument("kitai_ap_check: need at least one probe");
    kitai_report report;
    report.tolerance = options.tolerance;
    const auto& elements = seq.elements();
    const std::size_t tail_start = elements.size() / 2;
    for (auto j : probes) {
        if (j < 0) throw std::invalid_argument("kitai_ap_check: probe indices must be non-negative");
        for (std::size_t i = 0; i < elements.size(); ++i) {
            const auto n = elements[i];
            kitai_row row{j, n, rational(0), w.ratio(j, j + n)};
            if (n <= j) row.backward_norm = 1 / w.ratio(j - n, j);
            if (i >= tail_start && row.lift_norm > report.tail_max_lift) report.tail_max_lift = row.lift_norm;
            report.rows.push_back(std::move(row));
        }
    }
    for (std::int64_t m = 1; m <= options.max_homogeneous_length; ++m) {
        if (!find_homogeneous_ap(seq, m)) break;
        report.homogeneous_length = m;
    }
    report.lifts_vanish = !elements.empty() && report.tail_max_lift < report.tolerance;
    return report;
}

}  // namespace aprec
