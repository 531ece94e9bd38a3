#pragma once

// Exact rational scalars and their "num/den" text form.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aprec {

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return rational(integer(num), integer(den));
}

/// Parses "n", "n/d" or "-n/d". Whitespace is not accepted.
inline rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view part) {
        std::string_view digits = part;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        if (digits.empty()) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        for (char c : digits)
            if (c < '0' || c > '9') throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        return integer(std::string(part.front() == '+' ? part.substr(1) : part));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return rational(parse_int(text));
    integer num = parse_int(text.substr(0, slash));
    integer den = parse_int(text.substr(slash + 1));
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    return rational(num, den);
}

/// Always "num/den" in lowest terms, denominator positive ("2/1", "-1/4", "0/1").
inline std::string format_rational(const rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

inline double to_double(const rational& value) { return value.convert_to<double>(); }

inline rational abs(const rational& value) { return value < 0 ? rational(-value) : value; }

/// base^exponent for a possibly negative integer exponent; base must be nonzero when exponent < 0.
inline rational pow(const rational& base, std::int64_t exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return pow(rational(1) / base, -exponent);
    }
    integer num = boost::multiprecision::pow(integer(boost::multiprecision::numerator(base)), static_cast<unsigned>(exponent));
    integer den = boost::multiprecision::pow(integer(boost::multiprecision::denominator(base)), static_cast<unsigned>(exponent));
    return rational(num, den);
}

/// 2^exponent exactly.
inline rational pow2(std::int64_t exponent) {
    integer one = 1;
    if (exponent >= 0) return rational(one << static_cast<unsigned>(exponent));
    return rational(one, one << static_cast<unsigned>(-exponent));
}

}  // namespace aprec
