#pragma once

// Arithmetic-progression structure of finite sets of naturals.
//
// Lengths always count terms: {a, a+k, ..., a+mk} has length m+1.

#include "aprec/ap/hit_set.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace aprec {

namespace detail {

/// Per-step run lengths: run(x) = number of consecutive members x, x-step, x-2*step, ...
/// The value-indexed buffer is reused across steps, so each step costs O(|set|).
class step_runs {
public:
    explicit step_runs(const hit_set& set) : set_(set), run_(static_cast<std::size_t>(set.horizon()) + 1, 0) {}

    void compute(std::int64_t step) {
        for (auto x : set_.elements()) {
            auto prev = x - step;
            run_[static_cast<std::size_t>(x)] = 1 + (prev >= 0 ? run_[static_cast<std::size_t>(prev)] : 0);
        }
    }

    std::int64_t operator[](std::int64_t x) const { return run_[static_cast<std::size_t>(x)]; }

private:
    const hit_set& set_;
    std::vector<std::int64_t> run_;  // non-members stay 0
};

}  // namespace detail

/// Longest progression contained in `set`; ties go to the smallest step, then the
/// smallest initial term. Quadratic time and memory in |set|.
inline std::optional<ap_witness> longest_ap(const hit_set& set) {
    const auto& s = set.elements();
    const std::size_t n = s.size();
    if (n == 0) return std::nullopt;
    if (n == 1) return ap_witness{s[0], 1, 1};

    // len[i*n + j], i < j: longest progression whose last two terms are s[i], s[j].
    std::vector<std::uint32_t> len(n * n, 2);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        std::size_t i = j;
        std::size_t k = j + 1;
        while (i > 0 && k < n) {
            auto lhs = s[i - 1] + s[k];
            auto rhs = 2 * s[j];
            if (lhs < rhs) {
                ++k;
            } else if (lhs > rhs) {
                --i;
            } else {
                len[j * n + k] = len[(i - 1) * n + j] + 1;
                --i;
                ++k;
            }
        }
    }

    ap_witness best{s[0], s[1] - s[0], 0};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            std::int64_t length = len[j * n + k];
            std::int64_t step = s[k] - s[j];
            std::int64_t initial = s[k] - (length - 1) * step;
            bool better = length > best.length ||
                          (length == best.length && (step < best.step || (step == best.step && initial < best.initial)));
            if (better) best = {initial, step, length};
        }
    }
    return best;
}

/// First progression of exactly `length` terms in (step, initial) order.
inline std::optional<ap_witness> find_ap(const hit_set& set, std::int64_t length) {
    if (length < 1) throw std::invalid_argument("find_ap: length must be positive");
    if (set.empty()) return std::nullopt;
    const auto& s = set.elements();
    if (length == 1) return ap_witness{s.front(), 1, 1};
    const std::int64_t spread = s.back() - s.front();
    detail::step_runs run(set);
    for (std::int64_t step = 1; step * (length - 1) <= spread; ++step) {
        run.compute(step);
        for (auto x : s)
            if (run[x] >= length) return ap_witness{x - (length - 1) * step, step, length};
    }
    return std::nullopt;
}

/// Progression {q, 2q, ..., mq} (initial term equal to the step), smallest q first.
inline std::optional<ap_witness> find_homogeneous_ap(const hit_set& set, std::int64_t m) {
    if (m < 1) throw std::invalid_argument("find_homogeneous_ap: length must be positive");
    if (set.empty()) return std::nullopt;
    const auto max = set.elements().back();
    for (std::int64_t q = 1; q * m <= max; ++q) {
        bool all = true;
        for (std::int64_t j = 1; j <= m && all; ++j) all = set.contains(j * q);
        if (all) return ap_witness{q, q, m};
    }
    return std::nullopt;
}

/// Number of initial terms a with {a, a+step, ..., a+(length-1)step} inside `set`.
inline std::int64_t count_aps_with_step(const hit_set& set, std::int64_t step, std::int64_t length) {
    if (step < 1 || length < 1) throw std::invalid_argument("count_aps_with_step: step and length must be positive");
    detail::step_runs run(set);
    run.compute(step);
    std::int64_t count = 0;
    for (auto x : set.elements())
        if (run[x] >= length) ++count;
    return count;
}

/// Finite-horizon proxy for membership in the family of sets having, for each length,
/// one step with infinitely many progressions of that step. A failure is not a refutation.
struct ap_bar_verdict {
    bool pass = false;
    std::optional<std::int64_t> step;
    std::int64_t count = 0;  // progressions found at `step` (0 on failure)
};

inline ap_bar_verdict ap_bar_estimate(const hit_set& set, std::int64_t length, std::int64_t threshold) {
    if (length < 1 || threshold < 1) throw std::invalid_argument("ap_bar_estimate: length and threshold must be positive");
    const std::int64_t max_step = std::max<std::int64_t>(set.horizon(), 1);
    detail::step_runs run(set);
    for (std::int64_t step = 1; step <= max_step; ++step) {
        run.compute(step);
        std::int64_t count = 0;
        for (auto x : set.elements())
            if (run[x] >= length) ++count;
        if (count >= threshold) return {true, step, count};
        if (length == 1) break;  // the count does not depend on the step
    }
    return {};
}

}  // namespace aprec
