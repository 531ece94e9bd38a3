#pragma once

#include "aprec/errors.hpp"
#include "aprec/seq/operator.hpp"
#include "aprec/seq/space.hpp"

#include <cstdint>
#include <stdexcept>

namespace aprec {

/// #{ a <= horizon : lambda_a T^a x in U ∩ T^{-q}U ∩ ... ∩ T^{-mq}U }, i.e. the a with
/// lambda_a T^{a+iq} x in U for every 0 <= i <= m.
template <class S>
std::int64_t puig_count(const scalar_seq& scalars, const operator_spec& op, const basic_finite_vector<S>& x,
                        const basic_ball<S>& u, std::int64_t m, std::int64_t q, std::int64_t horizon) {
    if (m < 0 || q < 1 || horizon < 0) throw std::invalid_argument("puig_count: need m >= 0, q >= 1, horizon >= 0");
    if (scalar_traits<S>::exact && !scalars.is_exact())
        throw mode_mismatch("float-only scalars requested in exact mode");
    std::int64_t count = 0;
    for (std::int64_t a = 0; a <= horizon; ++a) {
        const S lambda = scalars.template value<S>(a);
        bool all = true;
        for (std::int64_t i = 0; i <= m && all; ++i) {
            auto point = apply_power(op, x, a + i * q);
            point *= lambda;
            all = in_ball(point, u);
        }
        if (all) ++count;
    }
    return count;
}

}  // namespace aprec
