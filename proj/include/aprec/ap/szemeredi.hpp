#pragma once

// Exact small-scale Szemerédi and van der Waerden computations.

#include "aprec/errors.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aprec {

/// Largest n accepted by the exhaustive searches. Elements are held in a 64-bit mask, so
/// no budget may exceed 63.
struct search_budget {
    std::int64_t max_n;
};

inline constexpr search_budget default_szemeredi_budget{25};
inline constexpr search_budget default_vdw_budget{12};

namespace detail {

using mask = std::uint64_t;

inline bool in_mask(mask m, std::int64_t x) { return x >= 1 && ((m >> x) & 1U); }

/// True iff adding x (larger than every member of `m`) closes a k-term progression in m ∪ {x}.
inline bool closes_progression(mask m, std::int64_t x, std::int64_t k) {
    for (std::int64_t d = 1; x - (k - 1) * d >= 1; ++d) {
        bool all = true;
        for (std::int64_t j = 1; j < k && all; ++j) all = in_mask(m, x - j * d);
        if (all) return true;
    }
    return false;
}

inline void check_budget(std::int64_t n, search_budget budget, const char* what) {
    if (budget.max_n > 63) throw std::invalid_argument(std::string(what) + ": budget above 63 is not supported");
    if (n > budget.max_n)
        throw budget_exceeded(std::string(what) + ": n = " + std::to_string(n) + " exceeds budget " +
                              std::to_string(budget.max_n));
}

class progression_free_search {
public:
    progression_free_search(std::int64_t len, std::int64_t k, std::int64_t target, const std::vector<std::int64_t>& r)
        : len_(len), k_(k), target_(target), r_(r) {}

    bool run() { return extend(1, 0, 0); }

private:
    // Decide elements x..len given the chosen set `m` of size `count`.
    bool extend(std::int64_t x, mask m, std::int64_t count) {
        if (count >= target_) return true;
        if (x > len_) return false;
        // Any progression-free subset of an interval of length L has at most r(L) elements.
        if (count + r_[static_cast<std::size_t>(len_ - x + 1)] < target_) return false;
        if (!closes_progression(m, x, k_) && extend(x + 1, m | (mask{1} << x), count + 1)) return true;
        return extend(x + 1, m, count);
    }

    std::int64_t len_, k_, target_;
    const std::vector<std::int64_t>& r_;
};

}  // namespace detail

/// r_k(n): the largest size of a subset of {1..n} without a k-term progression.
/// Computed exactly for every prefix length with branch and bound, pruning with the
/// already-known values for shorter intervals (r is translation invariant).
inline std::int64_t szemeredi_r(std::int64_t n, std::int64_t k, search_budget budget = default_szemeredi_budget) {
    if (n < 1) throw std::invalid_argument("szemeredi_r: n must be positive");
    if (k < 2) throw std::invalid_argument("szemeredi_r: k must be at least 2");
    detail::check_budget(n, budget, "szemeredi_r");
    if (n < k) return n;

    std::vector<std::int64_t> r(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t len = 1; len <= n; ++len) {
        auto previous = r[static_cast<std::size_t>(len - 1)];
        // r(len) is r(len-1) or r(len-1)+1; the larger value serves as the bound for the
        // whole interval while searching.
        r[static_cast<std::size_t>(len)] = previous + 1;
        detail::progression_free_search search(len, k, previous + 1, r);
        r[static_cast<std::size_t>(len)] = search.run() ? previous + 1 : previous;
    }
    return r[static_cast<std::size_t>(n)];
}

/// Outcome of a 2-colour van der Waerden check on {1..N}.
struct vdw_result {
    bool forced = false;
    std::string coloring;  // 'R'/'B' for 1..N when not forced
};

/// forced iff every red/blue colouring of {1..N} has a monochromatic k-term progression;
/// otherwise the lexicographically first (R < B) progression-free colouring.
inline vdw_result vdw_check(std::int64_t n, std::int64_t k, search_budget budget = default_vdw_budget) {
    if (n < 1) throw std::invalid_argument("vdw_check: N must be positive");
    if (k < 2) throw std::invalid_argument("vdw_check: k must be at least 2");
    detail::check_budget(n, budget, "vdw_check");

    std::string coloring(static_cast<std::size_t>(n), 'R');
    detail::mask red = 0, blue = 0;
    auto place = [&](auto&& self, std::int64_t x) -> bool {
        if (x > n) return true;
        if (!detail::closes_progression(red, x, k)) {
            red |= detail::mask{1} << x;
            coloring[static_cast<std::size_t>(x - 1)] = 'R';
            if (self(self, x + 1)) return true;
            red &= ~(detail::mask{1} << x);
        }
        if (!detail::closes_progression(blue, x, k)) {
            blue |= detail::mask{1} << x;
            coloring[static_cast<std::size_t>(x - 1)] = 'B';
            if (self(self, x + 1)) return true;
            blue &= ~(detail::mask{1} << x);
        }
        return false;
    };
    if (place(place, 1)) return {false, coloring};
    return {true, {}};
}

/// Independent check that a colouring has no monochromatic k-term progression.
inline bool coloring_is_progression_free(const std::string& coloring, std::int64_t k) {
    const auto n = static_cast<std::int64_t>(coloring.size());
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t d = 1; a + (k - 1) * d <= n; ++d) {
            bool mono = true;
            for (std::int64_t j = 1; j < k && mono; ++j)
                mono = coloring[static_cast<std::size_t>(a + j * d - 1)] == coloring[static_cast<std::size_t>(a - 1)];
            if (mono) return false;
        }
    return true;
}

}  // namespace aprec
