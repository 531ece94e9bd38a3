#pragma once

// Progression-universal vectors for lambda_n B^n (B the unweighted unilateral backward
// shift, S the forward shift):
//     y~ = sum_{j=0}^{m} S^{jk}(y) / lambda_{jk},   lambda_0 = 1, k beyond supp(y).
// Then lambda_{lk} B^{lk} y~ = y + sum_{j=l+1}^{m} (lambda_{lk}/lambda_{jk}) S^{(j-l)k}(y), which
// is close to y when the ratios lambda_{lk}/lambda_{jk} (j > l) are small.
//
// The scaled iterate checked here is T_{lk} y~ = lambda_{lk} B^{lk} y~. Writing
// lambda_{lk} T_{lk} would apply the scalar twice.

#include "aprec/errors.hpp"
#include "aprec/seq/operator.hpp"
#include "aprec/seq/scalars.hpp"
#include "aprec/seq/space.hpp"

#include <cstdint>
#include <string>

namespace aprec {

template <class S = rational>
basic_finite_vector<S> ap_universal_vector(const scalar_seq& scalars, const basic_finite_vector<S>& y, std::int64_t m,
                                           std::int64_t k) {
    if (m < 0) throw std::invalid_argument("ap_universal_vector: m must be non-negative");
    if (k < 1) throw std::invalid_argument("ap_universal_vector: k must be positive");
    if (scalar_traits<S>::exact && !scalars.is_exact())
        throw mode_mismatch("float-only scalars requested in exact mode");
    check_laterality(y, laterality::unilateral);
    if (auto top = y.max_index(); top && k <= *top)
        throw precondition_violation("ap_universal_vector: k = " + std::to_string(k) +
                                     " must exceed the support of y (max index " + std::to_string(*top) + ")");
    const auto shift = make_forward();
    basic_finite_vector<S> out;
    for (std::int64_t j = 0; j <= m; ++j) {
        auto term = apply_power(shift, y, j * k);
        term *= S(1) / scalars.template value<S>(j * k);
        out += term;
    }
    return out;
}

template <class S>
struct universal_check {
    norm_value<S> max_error;  // max over 1 <= l <= m of ||lambda_{lk} B^{lk} y~ - y||_p
    std::int64_t worst_l = 0;  // 0 when m = 0
};

template <class S = rational>
universal_check<S> verify_universal(const scalar_seq& scalars, const basic_finite_vector<S>& y, std::int64_t m,
                                    std::int64_t k, lp p) {
    const auto tilde = ap_universal_vector<S>(scalars, y, m, k);
    const auto seq = map_sequence::scaled_iterates(scalars, make_backward());
    universal_check<S> out;
    out.max_error = {S(0), scalar_traits<S>::exact && p == lp::two};
    for (std::int64_t l = 1; l <= m; ++l) {
        auto error = norm(iterate(seq, tilde, l * k) - y, p);
        if (error.value > out.max_error.value || out.worst_l == 0) {
            out.max_error = error;
            out.worst_l = l;
        }
    }
    return out;
}

}  // namespace aprec
