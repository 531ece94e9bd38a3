#pragma once

// Positive scalar sequences (lambda_n)_{n>=0} for scaled iterates lambda_n T^n, with the
// convention lambda_0 = 1.

#include "aprec/errors.hpp"
#include "aprec/rational.hpp"
#include "aprec/seq/vector.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace aprec {

struct one_scalars {};
/// lambda_n = 2^ceil(sqrt n), exact.
struct dyadic_sqrt_scalars {};
/// lambda_n = e^sqrt(n); float mode only.
struct exp_sqrt_scalars {};
/// lambda_1, ..., lambda_L.
struct explicit_scalars {
    std::vector<rational> values;
};

class scalar_seq {
public:
    using variant_type = std::variant<one_scalars, dyadic_sqrt_scalars, exp_sqrt_scalars, explicit_scalars>;

    scalar_seq() : spec_(one_scalars{}) {}
    static scalar_seq one() { return scalar_seq(one_scalars{}); }
    static scalar_seq dyadic_sqrt() { return scalar_seq(dyadic_sqrt_scalars{}); }
    static scalar_seq exp_sqrt() { return scalar_seq(exp_sqrt_scalars{}); }
    static scalar_seq explicit_list(std::vector<rational> values) {
        for (const auto& v : values)
            if (!(v > 0)) throw std::invalid_argument("explicit scalars must be positive");
        return scalar_seq(explicit_scalars{std::move(values)});
    }

    const variant_type& variant() const noexcept { return spec_; }
    bool is_exact() const noexcept { return !std::holds_alternative<exp_sqrt_scalars>(spec_); }
    bool is_one() const noexcept { return std::holds_alternative<one_scalars>(spec_); }

    rational exact(std::int64_t n) const {
        if (n < 0) throw std::out_of_range("scalar index must be >= 0");
        if (n == 0) return rational(1);
        return std::visit(
            [&](const auto& s) -> rational {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, one_scalars>)
                    return rational(1);
                else if constexpr (std::is_same_v<T, dyadic_sqrt_scalars>)
                    return pow2(ceil_sqrt(n));
                else if constexpr (std::is_same_v<T, exp_sqrt_scalars>)
                    throw mode_mismatch("e^sqrt(n) scalars are only available in float mode");
                else {
                    if (n > static_cast<std::int64_t>(s.values.size()))
                        throw std::out_of_range("scalar index " + std::to_string(n) + " beyond the explicit list");
                    return s.values[static_cast<std::size_t>(n - 1)];
                }
            },
            spec_);
    }

    double approx(std::int64_t n) const {
        if (std::holds_alternative<exp_sqrt_scalars>(spec_)) {
            if (n < 0) throw std::out_of_range("scalar index must be >= 0");
            return std::exp(std::sqrt(static_cast<double>(n)));
        }
        return to_double(exact(n));
    }

    /// lambda_n in the vector scalar type S (throws mode_mismatch for exact S and float-only data).
    template <class S>
    S value(std::int64_t n) const {
        if constexpr (scalar_traits<S>::exact)
            return exact(n);
        else
            return approx(n);
    }

    static std::int64_t ceil_sqrt(std::int64_t n) {
        auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
        while (s * s > n) --s;
        while ((s + 1) * (s + 1) <= n) ++s;
        return s * s == n ? s : s + 1;
    }

private:
    explicit scalar_seq(variant_type spec) : spec_(std::move(spec)) {}
    variant_type spec_;
};

}  // namespace aprec
