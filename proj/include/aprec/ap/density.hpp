#pragma once

// Finite-horizon density proxies. The lower/upper/Banach densities of a set of naturals are
// limits; what is computed here are their values over a fixed horizon, labelled as proxies.

#include "aprec/ap/hit_set.hpp"
#include "aprec/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace aprec {

struct density_estimate {
    rational lower_proxy;
    rational upper_proxy;
    rational banach_upper_proxy;
    std::int64_t horizon = 0;
    std::int64_t window = 1;
};

/// lower/upper: min/max of |S ∩ [0,n]|/(n+1) over n in [ceil(h/2), h].
/// banach_upper: max of the in-window density over windows [k, k+window) inside [0, h],
/// and never below upper_proxy (an initial segment is itself a window of the Banach density).
inline density_estimate density_report(const hit_set& set, std::int64_t window) {
    const auto h = set.horizon();
    if (window < 1 || window > h + 1)
        throw std::invalid_argument("density_report: window must lie in [1, horizon+1]");

    // prefix[n] = |S ∩ [0, n)|
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(h) + 2, 0);
    auto bits = set.indicator();
    for (std::int64_t n = 0; n <= h; ++n)
        prefix[static_cast<std::size_t>(n) + 1] = prefix[static_cast<std::size_t>(n)] + (bits[static_cast<std::size_t>(n)] ? 1 : 0);

    density_estimate out;
    out.horizon = h;
    out.window = window;
    bool first = true;
    for (std::int64_t n = (h + 1) / 2; n <= h; ++n) {
        rational d(integer(prefix[static_cast<std::size_t>(n) + 1]), integer(n + 1));
        if (first || d < out.lower_proxy) out.lower_proxy = d;
        if (first || d > out.upper_proxy) out.upper_proxy = d;
        first = false;
    }

    std::int64_t best = 0;
    for (std::int64_t k = 0; k + window <= h + 1; ++k)
        best = std::max(best, prefix[static_cast<std::size_t>(k + window)] - prefix[static_cast<std::size_t>(k)]);
    out.banach_upper_proxy = rational(integer(best), integer(window));
    if (out.banach_upper_proxy < out.upper_proxy) out.banach_upper_proxy = out.upper_proxy;
    return out;
}

}  // namespace aprec
