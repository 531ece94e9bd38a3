#pragma once

// Weight sequences (w_n)_{n>=1} of weighted backward shifts B_w e_n = w_n e_{n-1}.
//
// The "basis size" a_n = prod_{l=1}^{n} w_l^{-1} is the norm of the lift of e_0 to e_n and is
// what decides recurrence of B_w.

#include "aprec/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace aprec {

struct unit_weights {};

struct constant_weights {
    rational value;
};

/// w_1, w_2, ..., w_L; only indices up to L are accessible.
struct explicit_weights {
    std::vector<rational> values;
};

/// Block family with valleys: q_m = (m+3)! for 1 <= m <= M,
/// g(n) = max_{m<=M, 1<=j<=m} max(0, m - dist(n, [j q_m, j q_m + m])), a_n = 2^-g(n),
/// w_n = a_{n-1}/a_n in {1/2, 1, 2}. Then a_{j q_m + p} = 2^-m for p, j <= m, and a_n = 1
/// away from the valleys: the shift is multiply recurrent but a_n does not tend to 0.
struct valley_weights {
    std::int64_t depth = 1;  // M
};

class weight_spec {
public:
    using variant_type = std::variant<unit_weights, constant_weights, explicit_weights, valley_weights>;

    weight_spec() : spec_(unit_weights{}) {}

    static weight_spec unit() { return weight_spec(unit_weights{}); }

    static weight_spec constant(rational value) {
        if (!(value > 0)) throw std::invalid_argument("constant weight must be positive");
        return weight_spec(constant_weights{std::move(value)});
    }

    static weight_spec explicit_list(std::vector<rational> values) {
        for (const auto& w : values)
            if (!(w > 0)) throw std::invalid_argument("explicit weights must be positive");
        weight_spec spec(explicit_weights{std::move(values)});
        const auto& list = std::get<explicit_weights>(spec.spec_).values;
        spec.prefix_.reserve(list.size() + 1);
        spec.prefix_.emplace_back(1);
        for (const auto& w : list) spec.prefix_.push_back(spec.prefix_.back() / w);
        return spec;
    }

    static weight_spec valley(std::int64_t depth) {
        if (depth < 1 || depth > 16) throw std::invalid_argument("valley depth must lie in [1, 16]");
        return weight_spec(valley_weights{depth});
    }

    const variant_type& variant() const noexcept { return spec_; }

    /// Weights are the same at every index (so they extend to a bilateral shift).
    bool is_uniform() const noexcept {
        return std::holds_alternative<unit_weights>(spec_) || std::holds_alternative<constant_weights>(spec_);
    }

    /// Largest accessible index, if limited.
    std::optional<std::int64_t> accessible_limit() const {
        if (auto e = std::get_if<explicit_weights>(&spec_)) return static_cast<std::int64_t>(e->values.size());
        return std::nullopt;
    }

    /// sup_n w_n, the continuity bound (and operator-norm bound) of B_w on l_p.
    rational bound() const {
        return std::visit(
            [](const auto& s) -> rational {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, unit_weights>)
                    return rational(1);
                else if constexpr (std::is_same_v<T, constant_weights>)
                    return s.value;
                else if constexpr (std::is_same_v<T, explicit_weights>)
                    return s.values.empty() ? rational(1) : *std::max_element(s.values.begin(), s.values.end());
                else
                    return rational(2);
            },
            spec_);
    }

    /// w_n. Uniform weights accept any integer n; the others need 1 <= n <= limit.
    rational weight(std::int64_t n) const {
        if (auto c = std::get_if<constant_weights>(&spec_)) return c->value;
        if (std::holds_alternative<unit_weights>(spec_)) return rational(1);
        check_index(n);
        if (n < 1) throw std::out_of_range("weight index must be >= 1");
        if (auto e = std::get_if<explicit_weights>(&spec_)) return e->values[static_cast<std::size_t>(n - 1)];
        auto d = valley_profile(n) - valley_profile(n - 1);
        return pow2(d);
    }

    /// a_n = prod_{l=1}^{n} w_l^{-1}, n >= 0 (a_0 = 1).
    rational product(std::int64_t n) const {
        if (n < 0) throw std::out_of_range("weight product index must be >= 0");
        check_index(n);
        return std::visit(
            [&](const auto& s) -> rational {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, unit_weights>)
                    return rational(1);
                else if constexpr (std::is_same_v<T, constant_weights>)
                    return pow(s.value, -n);
                else if constexpr (std::is_same_v<T, explicit_weights>)
                    return prefix_[static_cast<std::size_t>(n)];
                else
                    return pow2(-valley_profile(n));
            },
            spec_);
    }

    /// prod_{l=from+1}^{to} w_l^{-1} = a_to / a_from for from <= to: the coefficient picked up
    /// when e_from is lifted to e_to. Uniform weights accept any integers.
    rational ratio(std::int64_t from, std::int64_t to) const {
        if (from > to) throw std::invalid_argument("weight ratio needs from <= to");
        if (auto c = std::get_if<constant_weights>(&spec_)) return pow(c->value, -(to - from));
        if (std::holds_alternative<unit_weights>(spec_)) return rational(1);
        return product(to) / product(from);
    }

    /// g(n) of the valley family (0 for other variants).
    std::int64_t valley_profile(std::int64_t n) const {
        auto v = std::get_if<valley_weights>(&spec_);
        if (!v) return 0;
        std::int64_t g = 0;
        for (std::int64_t m = 1; m <= v->depth; ++m) {
            const auto q = valley_step(m);
            for (std::int64_t j = 1; j <= m; ++j) {
                const auto lo = j * q;
                const auto hi = lo + m;
                const auto dist = n < lo ? lo - n : (n > hi ? n - hi : 0);
                g = std::max(g, m - dist);
            }
        }
        return g;
    }

    /// q_m = (m+3)!.
    static std::int64_t valley_step(std::int64_t m) {
        std::int64_t q = 1;
        for (std::int64_t i = 2; i <= m + 3; ++i) q *= i;
        return q;
    }

private:
    explicit weight_spec(variant_type spec) : spec_(std::move(spec)) {}

    void check_index(std::int64_t n) const {
        auto limit = accessible_limit();
        if (limit && n > *limit)
            throw std::out_of_range("weight index " + std::to_string(n) + " beyond the " + std::to_string(*limit) +
                                    " explicit weights");
    }

    variant_type spec_;
    std::vector<rational> prefix_;  // explicit weights: a_0..a_L
};

/// a_n; see weight_spec::product.
inline rational weight_product(const weight_spec& w, std::int64_t n) { return w.product(n); }

}  // namespace aprec
