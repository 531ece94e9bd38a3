#pragma once

#include "aprec/ap/hit_set.hpp"
#include "aprec/errors.hpp"
#include "aprec/seq/operator.hpp"
#include "aprec/seq/space.hpp"

#include <cstdint>
#include <vector>

namespace aprec {

/// N(x, U) up to the horizon: { n <= horizon : lambda_n T^n x in U }.
template <class S>
hit_set return_set(const map_sequence& seq, const basic_finite_vector<S>& x, const basic_ball<S>& u, std::int64_t horizon) {
    if (horizon < 0) throw std::invalid_argument("return_set: horizon must be non-negative");
    if (scalar_traits<S>::exact && !seq.scalars.is_exact())
        throw mode_mismatch("float-only scalars requested in exact mode");
    std::vector<std::int64_t> hits;
    auto orbit = x;  // T^n x
    for (std::int64_t n = 0; n <= horizon; ++n) {
        if (n > 0) orbit = aprec::apply(seq.op, orbit);
        if (orbit.is_zero()) {
            // 0 is fixed by every T and every scaling.
            if (in_ball(orbit, u))
                for (auto k = n; k <= horizon; ++k) hits.push_back(k);
            break;
        }
        auto point = orbit;
        if (!seq.scalars.is_one()) point *= seq.scalars.template value<S>(n);
        if (in_ball(point, u)) hits.push_back(n);
    }
    return hit_set(std::move(hits), horizon);
}

}  // namespace aprec
