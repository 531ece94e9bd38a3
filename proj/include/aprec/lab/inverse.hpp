#pragma once

#include "aprec/seq/operator.hpp"

#include <cstdint>
#include <stdexcept>

namespace aprec {

/// y = T^{mn} x for invertible T; then T^{-jn} y = T^{(m-j)n} x for 0 <= j <= m, which moves
/// recurrence of T^{-1} along n, 2n, ..., mn back to T.
inline finite_vector inverse_witness(const operator_spec& op, const finite_vector& x, std::int64_t n, std::int64_t m) {
    if (!is_invertible(op)) throw std::invalid_argument("inverse_witness: operator is not invertible");
    if (n < 1 || m < 1) throw std::invalid_argument("inverse_witness: n and m must be positive");
    return apply_power(op, x, m * n);
}

inline bool verify_inverse_witness(const operator_spec& op, const finite_vector& x, const finite_vector& y,
                                   std::int64_t n, std::int64_t m) {
    const auto inv = inverse(op);
    for (std::int64_t j = 0; j <= m; ++j)
        if (!(apply_power(inv, y, j * n) == apply_power(op, x, (m - j) * n))) return false;
    return true;
}

}  // namespace aprec
