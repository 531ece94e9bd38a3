#pragma once

// Witness records returned by the constructive searches, and the verifier that re-checks
// them. The verifier only uses iterate() and in_ball(); it shares no code with the searches.

#include "aprec/seq/operator.hpp"
#include "aprec/seq/space.hpp"

#include <cstdint>
#include <vector>

namespace aprec {

/// x with T^{jq} x in U for 0 <= j <= m; m follows the "j <= m" convention (m+1 memberships).
struct recurrence_witness {
    std::int64_t q = 1;
    finite_vector x;
    std::int64_t m = 0;
    std::vector<bool> verified_memberships;
};

/// Recomputes every membership T^{jq} x in U.
inline std::vector<bool> recurrence_memberships(const operator_spec& op, const ball& u, const finite_vector& x,
                                                std::int64_t q, std::int64_t m) {
    const auto seq = map_sequence::iterates(op);
    std::vector<bool> out;
    for (std::int64_t j = 0; j <= m; ++j) out.push_back(in_ball(iterate(seq, x, j * q), u));
    return out;
}

inline bool verify_recurrence(const operator_spec& op, const ball& u, const recurrence_witness& w) {
    if (w.q < 1 || w.m < 0) return false;
    auto memberships = recurrence_memberships(op, u, w.x, w.q, w.m);
    for (bool b : memberships)
        if (!b) return false;
    return true;
}

/// x_1, x_2 in U with T^{a+jq} x_i in V_i for 0 <= j <= m.
struct pair_witness {
    finite_vector x1;
    finite_vector x2;
    std::int64_t a = 1;
    std::int64_t q = 1;
    std::int64_t m = 0;
};

inline bool verify_pair(const operator_spec& op, const ball& u, const ball& v1, const ball& v2, const pair_witness& w) {
    if (w.a < 0 || w.q < 1 || w.m < 0) return false;
    if (!in_ball(w.x1, u) || !in_ball(w.x2, u)) return false;
    const auto seq = map_sequence::iterates(op);
    for (std::int64_t j = 0; j <= w.m; ++j) {
        if (!in_ball(iterate(seq, w.x1, w.a + j * w.q), v1)) return false;
        if (!in_ball(iterate(seq, w.x2, w.a + j * w.q), v2)) return false;
    }
    return true;
}

}  // namespace aprec
