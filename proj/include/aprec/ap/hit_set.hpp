#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace aprec {

/// Finite set of naturals truncated at an inclusive horizon, e.g. the return times
/// of an orbit to an open set up to some time.
class hit_set {
public:
    hit_set() = default;

    /// Elements may come unsorted and with duplicates; horizon defaults to the maximum.
    explicit hit_set(std::vector<std::int64_t> elements, std::optional<std::int64_t> horizon = std::nullopt)
        : elements_(std::move(elements)) {
        std::sort(elements_.begin(), elements_.end());
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
        if (!elements_.empty() && elements_.front() < 0) throw std::invalid_argument("hit_set elements must be non-negative");
        horizon_ = horizon.value_or(elements_.empty() ? 0 : elements_.back());
        if (horizon_ < 0) throw std::invalid_argument("hit_set horizon must be non-negative");
        if (!elements_.empty() && elements_.back() > horizon_)
            throw std::invalid_argument("hit_set element exceeds horizon");
    }

    /// The set {first, ..., last}.
    static hit_set range(std::int64_t first, std::int64_t last, std::optional<std::int64_t> horizon = std::nullopt) {
        std::vector<std::int64_t> v;
        for (auto n = first; n <= last; ++n) v.push_back(n);
        return hit_set(std::move(v), horizon);
    }

    const std::vector<std::int64_t>& elements() const noexcept { return elements_; }
    std::int64_t horizon() const noexcept { return horizon_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }

    bool contains(std::int64_t n) const { return std::binary_search(elements_.begin(), elements_.end(), n); }

    /// Membership bitmap over [0, horizon].
    std::vector<bool> indicator() const {
        std::vector<bool> bits(static_cast<std::size_t>(horizon_) + 1, false);
        for (auto n : elements_) bits[static_cast<std::size_t>(n)] = true;
        return bits;
    }

    friend bool operator==(const hit_set&, const hit_set&) = default;

private:
    std::vector<std::int64_t> elements_;
    std::int64_t horizon_ = 0;
};

/// Arithmetic progression {initial + j*step : 0 <= j < length}. `length` counts terms.
struct ap_witness {
    std::int64_t initial = 0;
    std::int64_t step = 1;
    std::int64_t length = 1;

    std::int64_t term(std::int64_t j) const noexcept { return initial + j * step; }
    std::int64_t last() const noexcept { return term(length - 1); }

    friend bool operator==(const ap_witness&, const ap_witness&) = default;
};

/// Term-by-term certificate check.
inline bool verify_ap(const hit_set& set, const ap_witness& w) {
    if (w.step < 1 || w.length < 1 || w.initial < 0) return false;
    for (std::int64_t j = 0; j < w.length; ++j)
        if (!set.contains(w.term(j))) return false;
    return true;
}

}  // namespace aprec
