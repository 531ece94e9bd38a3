#pragma once

// JSON forms of the library's values.
//
//   rational   "num/den" string (integers also accepted on input)
//   vector     [[index, numerator, denominator], ...]; also "e3" / "0" shorthands on input
//   weights    {"kind": "unit" | "constant" (value) | "explicit" (values) | "valley" (M)}
//   scalars    {"kind": "one" | "dyadic_sqrt" | "exp_sqrt" | "explicit" (values)} or the
//              bare strings "one", "dyadic-sqrt", "exp-sqrt"
//   operator   {"kind": "backward" | "forward", "weights", "p", "laterality"}
//              {"kind": "scaled", "scalar", "inner"} {"kind": "power", "exponent", "inner"}
//              {"kind": "direct_sum", "components": [...]}
//   ball       {"center", "radius", "p", "laterality"}
//
// Parsers report the offending field as a dotted path through schema_error.

#include "aprec/ap/density.hpp"
#include "aprec/ap/hit_set.hpp"
#include "aprec/rational.hpp"
#include "aprec/seq/operator.hpp"
#include "aprec/seq/scalars.hpp"
#include "aprec/seq/space.hpp"
#include "aprec/seq/vector.hpp"
#include "aprec/seq/weights.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aprec::io {

using json = nlohmann::json;

class schema_error : public std::invalid_argument {
public:
    schema_error(const std::string& field, const std::string& message)
        : std::invalid_argument("field '" + field + "': " + message), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

inline std::string join_path(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw schema_error(path.empty() ? "<root>" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw schema_error(join_path(path, key), "missing");
    return *it;
}

inline const json* optional_field(const json& obj, const std::string& key) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

inline std::int64_t parse_int(const json& j, const std::string& path) {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_unsigned()) {
        auto v = j.get<std::uint64_t>();
        if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) throw schema_error(path, "integer too large");
        return static_cast<std::int64_t>(v);
    }
    throw schema_error(path, "expected an integer");
}

inline std::int64_t parse_int_at_least(const json& j, const std::string& path, std::int64_t min) {
    auto v = parse_int(j, path);
    if (v < min) throw schema_error(path, "must be >= " + std::to_string(min));
    return v;
}

inline double parse_double(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    throw schema_error(path, "expected a number");
}

inline rational parse_rational_field(const json& j, const std::string& path) {
    if (j.is_number_integer() || j.is_number_unsigned()) return rational(parse_int(j, path));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw schema_error(path, e.what());
        }
    }
    throw schema_error(path, "expected a rational \"num/den\" string");
}

inline json to_json(const rational& r) { return format_rational(r); }

/// Integers that fit in int64 are written as numbers, larger ones as decimal strings.
inline json integer_to_json(const integer& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline integer parse_big_integer(const json& j, const std::string& path) {
    if (j.is_number_integer() || j.is_number_unsigned()) return integer(parse_int(j, path));
    if (j.is_string()) {
        auto text = j.get<std::string>();
        try {
            auto r = parse_rational(text);
            if (boost::multiprecision::denominator(r) != 1) throw std::invalid_argument("not an integer");
            return boost::multiprecision::numerator(r);
        } catch (const std::invalid_argument&) {
            throw schema_error(path, "expected an integer, got '" + text + "'");
        }
    }
    throw schema_error(path, "expected an integer");
}

// ---------------------------------------------------------------- vectors

inline json to_json(const finite_vector& v) {
    json out = json::array();
    for (const auto& [n, c] : v.entries())
        out.push_back(json::array({n, integer_to_json(boost::multiprecision::numerator(c)),
                                   integer_to_json(boost::multiprecision::denominator(c))}));
    return out;
}

inline json to_json(const float_vector& v) {
    json out = json::array();
    for (const auto& [n, c] : v.entries()) out.push_back(json::array({n, c}));
    return out;
}

inline finite_vector parse_vector(const json& j, const std::string& path) {
    if (j.is_string()) {
        auto text = j.get<std::string>();
        if (text == "0") return {};
        if (text.size() >= 2 && text[0] == 'e') {
            try {
                std::size_t used = 0;
                auto index = std::stoll(text.substr(1), &used);
                if (used == text.size() - 1) return finite_vector::basis(index);
            } catch (const std::exception&) {
            }
        }
        throw schema_error(path, "expected a vector literal or a basis shorthand like \"e3\", got '" + text + "'");
    }
    if (!j.is_array()) throw schema_error(path, "expected a list of [index, numerator, denominator] triples");
    finite_vector v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto item_path = path + "[" + std::to_string(i) + "]";
        const auto& t = j[i];
        if (!t.is_array() || t.size() != 3) throw schema_error(item_path, "expected [index, numerator, denominator]");
        auto index = parse_int(t[0], item_path + "[0]");
        auto num = parse_big_integer(t[1], item_path + "[1]");
        auto den = parse_big_integer(t[2], item_path + "[2]");
        if (den == 0) throw schema_error(item_path, "zero denominator");
        v.add(index, rational(num, den));
    }
    return v;
}

// ---------------------------------------------------------------- spaces

inline json lp_to_json(lp p) {
    switch (p) {
        case lp::one: return 1;
        case lp::two: return 2;
        case lp::inf: return "inf";
    }
    return nullptr;
}

inline lp parse_lp(const json& j, const std::string& path) {
    if (j.is_number_integer()) {
        auto v = j.get<std::int64_t>();
        if (v == 1) return lp::one;
        if (v == 2) return lp::two;
    }
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "1") return lp::one;
        if (s == "2") return lp::two;
        if (s == "inf") return lp::inf;
    }
    throw schema_error(path, "expected p = 1, 2 or \"inf\"");
}

inline laterality parse_laterality(const json& j, const std::string& path) {
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "unilateral") return laterality::unilateral;
        if (s == "bilateral") return laterality::bilateral;
    }
    throw schema_error(path, "expected \"unilateral\" or \"bilateral\"");
}

inline space_spec parse_space(const json& obj, const std::string& path, space_spec defaults = {}) {
    space_spec s = defaults;
    if (auto p = optional_field(obj, "p")) s.p = parse_lp(*p, join_path(path, "p"));
    if (auto l = optional_field(obj, "laterality")) s.side = parse_laterality(*l, join_path(path, "laterality"));
    return s;
}

// ---------------------------------------------------------------- weights and scalars

inline std::string require_kind(const json& obj, const std::string& path) {
    const auto& kind = require(obj, "kind", path);
    if (!kind.is_string()) throw schema_error(join_path(path, "kind"), "expected a string");
    return kind.get<std::string>();
}

inline std::vector<rational> parse_rational_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw schema_error(path, "expected a list of rationals");
    std::vector<rational> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rational_field(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline weight_spec parse_weights(const json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "unit") return weight_spec::unit();
    auto kind = require_kind(j, path);
    try {
        if (kind == "unit") return weight_spec::unit();
        if (kind == "constant") return weight_spec::constant(parse_rational_field(require(j, "value", path), join_path(path, "value")));
        if (kind == "explicit") return weight_spec::explicit_list(parse_rational_list(require(j, "values", path), join_path(path, "values")));
        if (kind == "valley") return weight_spec::valley(parse_int(require(j, "M", path), join_path(path, "M")));
    } catch (const schema_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw schema_error(path, e.what());
    }
    throw schema_error(join_path(path, "kind"), "unknown weight kind '" + kind + "'");
}

inline json to_json(const weight_spec& w) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, unit_weights>)
                return {{"kind", "unit"}};
            else if constexpr (std::is_same_v<T, constant_weights>)
                return {{"kind", "constant"}, {"value", to_json(s.value)}};
            else if constexpr (std::is_same_v<T, explicit_weights>) {
                json values = json::array();
                for (const auto& v : s.values) values.push_back(to_json(v));
                return {{"kind", "explicit"}, {"values", values}};
            } else
                return {{"kind", "valley"}, {"M", s.depth}};
        },
        w.variant());
}

inline scalar_seq parse_scalars(const json& j, const std::string& path) {
    std::string kind;
    if (j.is_string())
        kind = j.get<std::string>();
    else
        kind = require_kind(j, path);
    if (kind == "one") return scalar_seq::one();
    if (kind == "dyadic_sqrt" || kind == "dyadic-sqrt") return scalar_seq::dyadic_sqrt();
    if (kind == "exp_sqrt" || kind == "exp-sqrt") return scalar_seq::exp_sqrt();
    if (kind == "explicit") {
        if (!j.is_object()) throw schema_error(path, "explicit scalars need a \"values\" list");
        try {
            return scalar_seq::explicit_list(parse_rational_list(require(j, "values", path), join_path(path, "values")));
        } catch (const schema_error&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw schema_error(path, e.what());
        }
    }
    throw schema_error(path, "unknown scalar sequence '" + kind + "'");
}

inline json to_json(const scalar_seq& s) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, one_scalars>)
                return {{"kind", "one"}};
            else if constexpr (std::is_same_v<T, dyadic_sqrt_scalars>)
                return {{"kind", "dyadic_sqrt"}};
            else if constexpr (std::is_same_v<T, exp_sqrt_scalars>)
                return {{"kind", "exp_sqrt"}};
            else {
                json values = json::array();
                for (const auto& x : v.values) values.push_back(to_json(x));
                return {{"kind", "explicit"}, {"values", values}};
            }
        },
        s.variant());
}

// ---------------------------------------------------------------- operators

inline operator_spec parse_operator(const json& j, const std::string& path) {
    auto kind = require_kind(j, path);
    try {
        if (kind == "backward" || kind == "forward") {
            weight_spec w = weight_spec::unit();
            if (auto wj = optional_field(j, "weights")) w = parse_weights(*wj, join_path(path, "weights"));
            auto space = parse_space(j, path);
            return kind == "backward" ? make_backward(std::move(w), space) : make_forward(std::move(w), space);
        }
        if (kind == "scaled")
            return make_scaled(parse_rational_field(require(j, "scalar", path), join_path(path, "scalar")),
                               parse_operator(require(j, "inner", path), join_path(path, "inner")));
        if (kind == "power")
            return make_power(parse_int_at_least(require(j, "exponent", path), join_path(path, "exponent"), 1),
                              parse_operator(require(j, "inner", path), join_path(path, "inner")));
        if (kind == "direct_sum") {
            const auto& list = require(j, "components", path);
            if (!list.is_array() || list.empty())
                throw schema_error(join_path(path, "components"), "expected a non-empty list of operators");
            std::vector<operator_spec> parts;
            for (std::size_t i = 0; i < list.size(); ++i)
                parts.push_back(parse_operator(list[i], join_path(path, "components") + "[" + std::to_string(i) + "]"));
            return make_direct_sum(std::move(parts));
        }
    } catch (const schema_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw schema_error(path, e.what());
    }
    throw schema_error(join_path(path, "kind"), "unknown operator kind '" + kind + "'");
}

inline json to_json(const operator_spec& op) {
    return std::visit(
        [](const auto& node) -> json {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, backward_shift> || std::is_same_v<T, forward_shift>)
                return {{"kind", std::is_same_v<T, backward_shift> ? "backward" : "forward"},
                        {"weights", to_json(node.weights)},
                        {"p", lp_to_json(node.space.p)},
                        {"laterality", to_string(node.space.side)}};
            else if constexpr (std::is_same_v<T, scaled_operator>)
                return {{"kind", "scaled"}, {"scalar", to_json(node.scalar)}, {"inner", to_json(*node.inner)}};
            else if constexpr (std::is_same_v<T, power_operator>)
                return {{"kind", "power"}, {"exponent", node.exponent}, {"inner", to_json(*node.inner)}};
            else {
                json parts = json::array();
                for (const auto& c : node.components) parts.push_back(to_json(*c));
                return {{"kind", "direct_sum"}, {"components", parts}};
            }
        },
        op.node);
}

// ---------------------------------------------------------------- balls and sets

/// `defaults` fills in p and laterality when the ball leaves them out.
inline ball parse_ball(const json& j, const std::string& path, space_spec defaults = {}) {
    auto center = parse_vector(require(j, "center", path), join_path(path, "center"));
    auto radius = parse_rational_field(require(j, "radius", path), join_path(path, "radius"));
    auto space = parse_space(j, path, defaults);
    if (!(radius > 0)) throw schema_error(join_path(path, "radius"), "must be positive");
    try {
        return ball(std::move(center), std::move(radius), space);
    } catch (const std::invalid_argument& e) {
        throw schema_error(path, e.what());
    }
}

inline json to_json(const ball& b) {
    return {{"center", to_json(b.center)},
            {"radius", to_json(b.radius)},
            {"p", lp_to_json(b.space.p)},
            {"laterality", to_string(b.space.side)}};
}

inline json to_json(const std::optional<ap_witness>& w) {
    if (!w) return nullptr;
    return {{"initial", w->initial}, {"step", w->step}, {"length", w->length}};
}

inline json to_json(const hit_set& s) { return {{"elements", s.elements()}, {"horizon", s.horizon()}}; }

inline json to_json(const density_estimate& d) {
    return {{"lower_proxy", to_json(d.lower_proxy)},
            {"upper_proxy", to_json(d.upper_proxy)},
            {"banach_upper_proxy", to_json(d.banach_upper_proxy)},
            {"horizon", d.horizon},
            {"window", d.window},
            {"proxies", true}};
}

/// Sets on standard input: whitespace/newline-separated decimal integers, or a JSON array.
inline std::vector<std::int64_t> parse_set_text(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw schema_error("<stdin>", e.what());
        }
        std::vector<std::int64_t> out;
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_int(j[i], "<stdin>[" + std::to_string(i) + "]"));
        return out;
    }
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    std::size_t line = 1;
    while (pos < text.size()) {
        if (text[pos] == '\n') ++line;
        if (std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            continue;
        }
        auto end = text.find_first_of(" \t\r\n", pos);
        auto token = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        try {
            std::size_t used = 0;
            auto v = std::stoll(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(v);
        } catch (const std::exception&) {
            throw schema_error("<stdin> line " + std::to_string(line), "not a decimal integer: '" + token + "'");
        }
        pos = end == std::string::npos ? text.size() : end;
    }
    return out;
}

}  // namespace aprec::io
