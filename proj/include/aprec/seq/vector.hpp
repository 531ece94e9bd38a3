#pragma once

// Finitely supported vectors over the canonical basis {e_n}.

#include "aprec/rational.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <type_traits>

namespace aprec {

/// Conversions from exact data into a vector scalar type: `rational` for exact mode,
/// `double` for float mode.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<rational> {
    static constexpr bool exact = true;
    static rational from_rational(const rational& r) { return r; }
    static rational abs(const rational& r) { return aprec::abs(r); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_rational(const rational& r) { return to_double(r); }
    static double abs(double r) { return std::abs(r); }
};

template <class S>
class basic_finite_vector {
public:
    using scalar = S;
    using storage = std::map<std::int64_t, S>;

    basic_finite_vector() = default;

    static basic_finite_vector basis(std::int64_t index, S coefficient = S(1)) {
        basic_finite_vector v;
        v.add(index, coefficient);
        return v;
    }

    /// Adds `coefficient * e_index`; entries that cancel to zero are erased.
    void add(std::int64_t index, const S& coefficient) {
        if (coefficient == S(0)) return;
        auto [it, inserted] = entries_.try_emplace(index, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second == S(0)) entries_.erase(it);
        }
    }

    S coefficient(std::int64_t index) const {
        auto it = entries_.find(index);
        return it == entries_.end() ? S(0) : it->second;
    }

    const storage& entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }
    std::size_t support_size() const noexcept { return entries_.size(); }

    std::optional<std::int64_t> max_index() const {
        if (entries_.empty()) return std::nullopt;
        return entries_.rbegin()->first;
    }
    std::optional<std::int64_t> min_index() const {
        if (entries_.empty()) return std::nullopt;
        return entries_.begin()->first;
    }

    basic_finite_vector& operator+=(const basic_finite_vector& other) {
        for (const auto& [n, c] : other.entries_) add(n, c);
        return *this;
    }
    basic_finite_vector& operator-=(const basic_finite_vector& other) {
        for (const auto& [n, c] : other.entries_) add(n, -c);
        return *this;
    }
    basic_finite_vector& operator*=(const S& factor) {
        if (factor == S(0)) {
            entries_.clear();
            return *this;
        }
        for (auto& entry : entries_) entry.second *= factor;
        return *this;
    }

    friend basic_finite_vector operator+(basic_finite_vector a, const basic_finite_vector& b) { return a += b; }
    friend basic_finite_vector operator-(basic_finite_vector a, const basic_finite_vector& b) { return a -= b; }
    friend basic_finite_vector operator*(const S& factor, basic_finite_vector v) { return v *= factor; }
    friend basic_finite_vector operator-(basic_finite_vector v) { return v *= S(-1); }

    friend bool operator==(const basic_finite_vector& a, const basic_finite_vector& b) { return a.entries_ == b.entries_; }

    /// Exact image of a rational vector in another scalar type.
    template <class T>
    basic_finite_vector<T> convert() const {
        basic_finite_vector<T> out;
        for (const auto& [n, c] : entries_) {
            if constexpr (std::is_same_v<S, rational>)
                out.add(n, scalar_traits<T>::from_rational(c));
            else
                out.add(n, static_cast<T>(c));
        }
        return out;
    }

private:
    storage entries_;
};

using finite_vector = basic_finite_vector<rational>;
using float_vector = basic_finite_vector<double>;

}  // namespace aprec
