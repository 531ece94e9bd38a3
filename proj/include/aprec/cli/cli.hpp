#pragma once

// Command-line front end. run() parses arguments, merges a --config file with flags, checks
// the merged config against the subcommand's schema and prints a JSON report or CSV rows.
//
// Exit codes: 0 verified witness or value, 1 search exhausted (inconclusive), 2 bad input.
//
// Recurrence subcommands take m in the "j <= m" convention (m+1 memberships). They also
// accept `length`, a term count as used by the progression tools; recurrence_m() is the
// only place where one is turned into the other.

#include "aprec/aprec.hpp"
#include "aprec/io/json.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace aprec::cli {

using io::json;
using io::schema_error;

inline constexpr std::size_t max_sweep_points = 100000;

// ---------------------------------------------------------------- config access

/// Value at a dotted path, or nullptr.
inline const json* lookup(const json& config, const std::string& path) {
    const json* node = &config;
    std::size_t start = 0;
    while (true) {
        auto dot = path.find('.', start);
        auto key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object()) return nullptr;
        auto it = node->find(key);
        if (it == node->end()) return nullptr;
        node = &*it;
        if (dot == std::string::npos) return node;
        start = dot + 1;
    }
}

inline void assign(json& config, const std::string& path, json value) {
    json* node = &config;
    std::size_t start = 0;
    while (true) {
        auto dot = path.find('.', start);
        auto key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object()) *node = json::object();
        if (dot == std::string::npos) {
            (*node)[key] = std::move(value);
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

/// Flag text as JSON when it parses as a number, array, object or boolean; otherwise a string.
inline json flag_value(const std::string& text) {
    try {
        auto j = json::parse(text);
        if (j.is_number() || j.is_array() || j.is_object() || j.is_boolean() || j.is_string()) return j;
    } catch (const json::parse_error&) {
    }
    return text;
}

enum class mode { exact, floating };

inline std::string to_string(mode m) { return m == mode::exact ? "exact" : "float"; }

/// Lazily read standard input, shared by all points of a sweep.
class input_source {
public:
    explicit input_source(std::istream& in) : in_(in) {}
    const std::string& text() {
        if (!text_) {
            std::ostringstream buffer;
            buffer << in_.rdbuf();
            text_ = buffer.str();
        }
        return *text_;
    }

private:
    std::istream& in_;
    std::optional<std::string> text_;
};

/// Per-invocation view of the config. Records where every bound came from.
class context {
public:
    context(json config, mode md, input_source& in) : config_(std::move(config)), mode_(md), in_(in) {}

    const json& config() const { return config_; }
    json& echo() { return config_; }
    mode arithmetic() const { return mode_; }
    bool exact() const { return mode_ == mode::exact; }
    input_source& input() { return in_; }
    const json& provenance() const { return provenance_; }

    const json* get(const std::string& path) const { return lookup(config_, path); }
    bool has(const std::string& path) const { return get(path) != nullptr; }

    const json& need(const std::string& path) const {
        auto j = get(path);
        if (!j) throw schema_error(path, "missing");
        return *j;
    }

    std::int64_t integer_at_least(const std::string& path, std::int64_t min) const {
        return io::parse_int_at_least(need(path), path, min);
    }

    /// A search or horizon bound; the report states whether it was given or defaulted.
    std::int64_t bound(const std::string& path, std::int64_t fallback, std::int64_t min) {
        std::int64_t value = fallback;
        const bool given = has(path);
        if (given) value = io::parse_int_at_least(*get(path), path, min);
        assign(provenance_, path, json{{"value", value}, {"source", given ? "explicit" : "default"}});
        return value;
    }

    rational rational_at(const std::string& path) const { return io::parse_rational_field(need(path), path); }

private:
    json config_;
    mode mode_;
    input_source& in_;
    json provenance_ = json::object();
};

struct outcome {
    std::string verdict;  // "value", "witness", "exhausted"
    bool verified = false;
    json body = json::object();
    std::vector<std::vector<std::string>> rows;

    int exit_code() const { return verdict == "exhausted" ? 1 : 0; }
};

inline outcome exhausted(json body, std::string reason) {
    outcome out;
    out.verdict = "exhausted";
    out.verified = false;
    body["inconclusive"] = true;
    body["note"] = std::move(reason);
    out.body = std::move(body);
    return out;
}

inline outcome verified(std::string verdict, json body) {
    outcome out;
    out.verdict = std::move(verdict);
    out.verified = true;
    out.body = std::move(body);
    return out;
}

// ---------------------------------------------------------------- formatting

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// "index:num/den" pairs separated by ';', for CSV cells.
inline std::string compact(const finite_vector& v) {
    std::string out;
    for (const auto& [n, c] : v.entries()) {
        if (!out.empty()) out += ';';
        out += std::to_string(n) + ':' + format_rational(c);
    }
    return out;
}

inline std::string compact(const float_vector& v) {
    std::string out;
    for (const auto& [n, c] : v.entries()) {
        if (!out.empty()) out += ';';
        out += std::to_string(n) + ':' + format_double(c);
    }
    return out;
}

inline json scalar_json(const rational& v) { return format_rational(v); }
inline json scalar_json(double v) { return v; }
inline std::string scalar_text(const rational& v) { return format_rational(v); }
inline std::string scalar_text(double v) { return format_double(v); }

template <class S>
json norm_json(const norm_value<S>& n) {
    return {{"value", scalar_json(n.value)}, {"squared", n.squared}};
}

inline std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << '\n';
}

template <class T>
std::string opt_text(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, double>)
        return format_double(*v);
    else
        return std::to_string(*v);
}

// ---------------------------------------------------------------- shared parsing

inline space_spec operator_space(const operator_spec& op) {
    if (auto sum = std::get_if<direct_sum_operator>(&op.node))
        return {operator_space(*sum->components.front()).p, operator_laterality(op)};
    return std::visit(
        [](const auto& node) -> space_spec {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, backward_shift> || std::is_same_v<T, forward_shift>)
                return node.space;
            else if constexpr (std::is_same_v<T, scaled_operator> || std::is_same_v<T, power_operator>)
                return operator_space(*node.inner);
            else
                return {};
        },
        op.node);
}

inline operator_spec parse_operator_at(const context& ctx, const std::string& path = "operator") {
    return io::parse_operator(ctx.need(path), path);
}

/// Weighted backward shift given either as "operator" (kind backward) or as "weights" with
/// optional "p" and "laterality".
struct shift_config {
    weight_spec weights = weight_spec::unit();
    space_spec space;
};

inline shift_config parse_shift(const context& ctx) {
    if (ctx.has("operator")) {
        if (ctx.has("weights")) throw schema_error("weights", "give either operator or weights, not both");
        auto op = parse_operator_at(ctx);
        auto b = std::get_if<backward_shift>(&op.node);
        if (!b) throw schema_error("operator.kind", "this subcommand needs a weighted backward shift");
        return {b->weights, b->space};
    }
    shift_config out;
    out.weights = io::parse_weights(ctx.need("weights"), "weights");
    out.space = io::parse_space(ctx.config(), "");
    if (out.space.side == laterality::bilateral && !out.weights.is_uniform())
        throw schema_error("laterality", "bilateral shifts need unit or constant weights");
    return out;
}

inline ball parse_ball_in(const context& ctx, const std::string& path, space_spec space) {
    auto b = io::parse_ball(ctx.need(path), path, space);
    if (!(b.space == space)) throw schema_error(path, "ball space differs from the operator's space");
    return b;
}

/// m in the "j <= m" convention, from either `m` or a term count `length`.
inline std::int64_t recurrence_m(const context& ctx, std::int64_t min_m = 0) {
    if (ctx.has("m") && ctx.has("length")) throw schema_error("length", "give either m or length, not both");
    if (ctx.has("length")) return ctx.integer_at_least("length", min_m + 1) - 1;
    return ctx.integer_at_least("m", min_m);
}

inline std::vector<std::int64_t> read_set(context& ctx) {
    if (auto s = ctx.get("set")) {
        if (!s->is_array()) throw schema_error("set", "expected a JSON array of integers");
        std::vector<std::int64_t> out;
        for (std::size_t i = 0; i < s->size(); ++i) out.push_back(io::parse_int((*s)[i], "set[" + std::to_string(i) + "]"));
        return out;
    }
    auto values = io::parse_set_text(ctx.input().text());
    ctx.echo()["set"] = values;  // so that the echoed config reproduces the report
    return values;
}

// ---------------------------------------------------------------- subcommands

inline outcome cmd_analyze_set(context& ctx) {
    auto values = read_set(ctx);
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] < 0) throw schema_error("set[" + std::to_string(i) + "]", "elements must be non-negative");
    const std::int64_t max_element = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
    const auto horizon = ctx.bound("horizon", max_element, 0);
    if (horizon < max_element) throw schema_error("horizon", "smaller than the largest element");
    const hit_set set(values, horizon);
    const auto window = ctx.bound("window", std::min<std::int64_t>(10, horizon + 1), 1);
    if (window > horizon + 1) throw schema_error("window", "must not exceed horizon+1");

    json body;
    const auto longest = longest_ap(set);
    const auto density = density_report(set, window);
    body["size"] = set.size();
    body["horizon"] = horizon;
    body["longest_ap"] = io::to_json(longest);
    body["density"] = io::to_json(density);

    bool inconclusive = false;
    std::string row_find, row_hom, row_bar;
    if (ctx.has("length")) {
        const auto length = ctx.integer_at_least("length", 1);
        auto found = find_ap(set, length);
        body["find_ap"] = io::to_json(found);
        inconclusive = inconclusive || !found;
        if (ctx.has("threshold")) {
            auto verdict = ap_bar_estimate(set, length, ctx.integer_at_least("threshold", 1));
            body["ap_bar"] = {{"pass", verdict.pass},
                              {"step", verdict.step ? json(*verdict.step) : json(nullptr)},
                              {"count", verdict.count}};
            inconclusive = inconclusive || !verdict.pass;
        }
    } else if (ctx.has("threshold")) {
        throw schema_error("threshold", "needs length");
    }
    if (ctx.has("homogeneous")) {
        auto found = find_homogeneous_ap(set, ctx.integer_at_least("homogeneous", 1));
        body["homogeneous_ap"] = io::to_json(found);
        inconclusive = inconclusive || !found;
    }

    std::vector<std::string> row{std::to_string(set.size()), std::to_string(horizon)};
    row.push_back(longest ? std::to_string(longest->initial) : "");
    row.push_back(longest ? std::to_string(longest->step) : "");
    row.push_back(longest ? std::to_string(longest->length) : "0");
    row.push_back(format_rational(density.lower_proxy));
    row.push_back(format_rational(density.upper_proxy));
    row.push_back(format_rational(density.banach_upper_proxy));
    row.push_back(std::to_string(window));

    auto out = inconclusive ? exhausted(body, "a requested progression was not found within the horizon; not a refutation")
                            : verified("value", body);
    out.rows.push_back(std::move(row));
    return out;
}

inline scalar_seq parse_scalars_for(const context& ctx) {
    auto scalars = ctx.has("scalars") ? io::parse_scalars(ctx.need("scalars"), "scalars") : scalar_seq::one();
    if (ctx.exact() && !scalars.is_exact()) throw schema_error("scalars", "exp_sqrt scalars need --mode float");
    return scalars;
}

template <class S>
outcome orbit_impl(context& ctx) {
    const auto op = parse_operator_at(ctx);
    const auto space = operator_space(op);
    const auto scalars = parse_scalars_for(ctx);
    auto x0 = io::parse_vector(ctx.need("x"), "x");
    check_laterality(x0, space.side);
    const auto x = x0.convert<S>();
    const auto horizon = ctx.bound("horizon", 10, 0);
    const auto p = ctx.has("p") ? io::parse_lp(ctx.need("p"), "p") : space.p;
    const auto seq = map_sequence::scaled_iterates(scalars, op);

    json orbit = json::array();
    outcome out = verified("value", {});
    for (std::int64_t n = 0; n <= horizon; ++n) {
        auto v = iterate(seq, x, n);
        auto nv = norm(v, p);
        orbit.push_back({{"n", n}, {"vector", io::to_json(v)}, {"norm", norm_json(nv)}});
        out.rows.push_back({std::to_string(n), scalar_text(nv.value), nv.squared ? "true" : "false",
                            std::to_string(v.support_size()), compact(v)});
    }
    out.body["orbit"] = std::move(orbit);
    out.body["norm_p"] = io::lp_to_json(p);
    return out;
}

template <class S>
outcome return_set_impl(context& ctx) {
    const auto op = parse_operator_at(ctx);
    const auto space = operator_space(op);
    const auto scalars = parse_scalars_for(ctx);
    auto x0 = io::parse_vector(ctx.need("x"), "x");
    check_laterality(x0, space.side);
    const auto u = parse_ball_in(ctx, "ball", space);
    const auto horizon = ctx.bound("horizon", 100, 0);
    const auto hits = return_set(map_sequence::scaled_iterates(scalars, op), x0.convert<S>(), u.template convert<S>(), horizon);

    outcome out = verified("value", {});
    out.body["return_set"] = io::to_json(hits);
    out.body["longest_ap"] = io::to_json(longest_ap(hits));
    for (auto n : hits.elements()) out.rows.push_back({std::to_string(n)});
    return out;
}

inline outcome cmd_shift_check(context& ctx) {
    const auto shift = parse_shift(ctx);
    const auto eps = ctx.rational_at("epsilon");
    if (!(eps > 0)) throw schema_error("epsilon", "must be positive");
    if (shift.space.side != laterality::unilateral) throw schema_error("laterality", "unilateral backward shifts only");
    criterion_bounds bounds;
    bounds.p_max = ctx.bound("bounds.p_max", 3, 0);
    bounds.m_max = ctx.bound("bounds.m_max", 3, 1);
    bounds.q_max = ctx.bound("bounds.q_max", 100, 1);
    const auto report = shift_ap_criterion(shift.weights, shift.space, eps, bounds);

    json grid = json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& [key, q] : report.grid) {
        grid.push_back({{"p", key.first}, {"m", key.second}, {"q", q ? json(*q) : json(nullptr)}});
        rows.push_back({std::to_string(key.first), std::to_string(key.second), opt_text(q), q ? "witness" : "exhausted"});
    }
    json body{{"grid", grid}, {"epsilon", format_rational(eps)}, {"fully_populated", report.fully_populated()}};
    auto out = report.fully_populated()
                   ? verified("witness", body)
                   : exhausted(body, "some cells have no step within q_max; not a refutation");
    out.rows = std::move(rows);
    return out;
}

inline json witness_json(const recurrence_witness& w) {
    return {{"q", w.q}, {"m", w.m}, {"terms", w.m + 1}, {"x", io::to_json(w.x)}, {"memberships", w.verified_memberships}};
}

inline outcome cmd_multirec(context& ctx) {
    const auto shift = parse_shift(ctx);
    if (shift.space.side != laterality::unilateral) throw schema_error("laterality", "unilateral backward shifts only");
    const auto u = parse_ball_in(ctx, "ball", shift.space);
    const auto m = recurrence_m(ctx);
    const auto q_max = ctx.bound("bounds.q_max", 100, 1);
    const auto w = multirec_witness(shift.weights, shift.space, u, m, q_max);
    if (!w) {
        auto out = exhausted({{"witness", nullptr}}, "no lift-sum witness with q <= q_max; not a refutation");
        out.rows.push_back({"", std::to_string(m), std::to_string(m + 1), "", "exhausted"});
        return out;
    }
    const bool ok = verify_recurrence(make_backward(shift.weights, shift.space), u, *w);
    auto out = verified("witness", {{"witness", witness_json(*w)}});
    out.verified = ok;
    out.rows.push_back({std::to_string(w->q), std::to_string(m), std::to_string(m + 1), compact(w->x), ok ? "witness" : "unverified"});
    return out;
}

template <class S>
outcome universal_impl(context& ctx) {
    const auto scalars = parse_scalars_for(ctx);
    const auto y = io::parse_vector(ctx.need("y"), "y");
    const auto m = ctx.integer_at_least("m", 0);
    const auto k = ctx.integer_at_least("k", 1);
    const auto p = ctx.has("p") ? io::parse_lp(ctx.need("p"), "p") : lp::one;
    if (auto top = y.max_index(); top && k <= *top) throw schema_error("k", "must exceed the support of y");
    if (auto lo = y.min_index(); lo && *lo < 0) throw schema_error("y", "negative index in a unilateral space");
    const auto ys = y.convert<S>();
    const auto tilde = ap_universal_vector<S>(scalars, ys, m, k);
    const auto check = verify_universal<S>(scalars, ys, m, k, p);

    outcome out = verified("value", {{"y_tilde", io::to_json(tilde)},
                                      {"max_error", norm_json(check.max_error)},
                                      {"worst_l", check.worst_l},
                                      {"norm_p", io::lp_to_json(p)}});
    out.rows.push_back({std::to_string(m), std::to_string(k), to_string(p), scalar_text(check.max_error.value),
                        check.max_error.squared ? "true" : "false", std::to_string(check.worst_l)});
    return out;
}

inline std::vector<std::int64_t> gowers_levels(const context& ctx) {
    if (ctx.has("l") && (ctx.has("l_min") || ctx.has("l_max"))) throw schema_error("l", "give either l or l_min/l_max");
    std::vector<std::int64_t> levels;
    if (auto l = ctx.get("l")) {
        if (l->is_array()) {
            for (std::size_t i = 0; i < l->size(); ++i)
                levels.push_back(io::parse_int_at_least((*l)[i], "l[" + std::to_string(i) + "]", 1));
        } else {
            levels.push_back(io::parse_int_at_least(*l, "l", 1));
        }
        return levels;
    }
    const auto lo = ctx.integer_at_least("l_min", 1);
    const auto hi = ctx.integer_at_least("l_max", lo);
    if (hi - lo > 1000000) throw schema_error("l_max", "range too large");
    for (auto l = lo; l <= hi; ++l) levels.push_back(l);
    return levels;
}

inline outcome cmd_gowers(context& ctx) {
    outcome out = verified("value", {});
    json rows = json::array();
    for (auto l : gowers_levels(ctx)) {
        const auto row = gowers::make_row(l);
        rows.push_back({{"l", row.l},
                        {"m_l", row.m_l},
                        {"f_at_m_l", row.f_at_m_l},
                        {"bound_r3", row.bound_r3 ? json(*row.bound_r3) : json(nullptr)},
                        {"k_of_n", row.k_of_n ? json(*row.k_of_n) : json(nullptr)},
                        {"vacuous", row.vacuous}});
        out.rows.push_back({std::to_string(row.l), std::to_string(row.m_l), format_double(row.f_at_m_l),
                            opt_text(row.bound_r3), opt_text(row.k_of_n), row.vacuous ? "true" : "false"});
    }
    out.body["rows"] = std::move(rows);
    return out;
}

inline outcome cmd_szemeredi(context& ctx) {
    const auto n = ctx.integer_at_least("n", 1);
    const auto k = ctx.has("k") ? ctx.integer_at_least("k", 2) : 3;
    const auto budget = ctx.bound("budget", default_szemeredi_budget.max_n, 1);
    if (budget > 63) throw schema_error("budget", "must not exceed 63");
    if (n > budget)
        return exhausted({{"n", n}, {"k", k}, {"r", nullptr}}, "n exceeds the search budget; nothing was computed, not a refutation");
    const auto r = szemeredi_r(n, k, {budget});
    auto out = verified("value", {{"n", n}, {"k", k}, {"r", r}});
    out.rows.push_back({std::to_string(n), std::to_string(k), std::to_string(r)});
    return out;
}

inline outcome cmd_vdw(context& ctx) {
    const auto n = ctx.integer_at_least("n", 1);
    const auto k = ctx.has("k") ? ctx.integer_at_least("k", 2) : 3;
    const auto budget = ctx.bound("budget", default_vdw_budget.max_n, 1);
    if (budget > 63) throw schema_error("budget", "must not exceed 63");
    if (n > budget)
        return exhausted({{"n", n}, {"k", k}, {"forced", nullptr}}, "N exceeds the search budget; nothing was computed, not a refutation");
    const auto result = vdw_check(n, k, {budget});
    json body{{"n", n}, {"k", k}, {"forced", result.forced}};
    bool ok = true;
    if (!result.forced) {
        body["coloring"] = result.coloring;
        ok = coloring_is_progression_free(result.coloring, k);
    }
    auto out = verified("value", body);
    out.verified = ok;
    out.rows.push_back({std::to_string(n), std::to_string(k), result.forced ? "true" : "false", result.coloring});
    return out;
}

inline outcome cmd_pair_search(context& ctx) {
    const auto shift = parse_shift(ctx);
    if (shift.space.side != laterality::unilateral) throw schema_error("laterality", "unilateral backward shifts only");
    const auto u = parse_ball_in(ctx, "ball", shift.space);
    const auto v1 = parse_ball_in(ctx, "v1", shift.space);
    const auto v2 = parse_ball_in(ctx, "v2", shift.space);
    const auto m = recurrence_m(ctx);
    pair_bounds bounds;
    bounds.a_max = ctx.bound("bounds.a_max", 10, 1);
    bounds.q_max = ctx.bound("bounds.q_max", 50, 1);
    const auto w = weak_mixing_pair_search(shift.weights, shift.space, u, v1, v2, m, bounds);
    if (!w) {
        auto out = exhausted({{"witness", nullptr}}, "no pair within a_max and q_max; not a refutation");
        out.rows.push_back({"", "", std::to_string(m), "", "", "exhausted"});
        return out;
    }
    const bool ok = verify_pair(make_backward(shift.weights, shift.space), u, v1, v2, *w);
    auto out = verified("witness", {{"witness",
                                     {{"a", w->a}, {"q", w->q}, {"m", w->m}, {"x1", io::to_json(w->x1)}, {"x2", io::to_json(w->x2)}}}});
    out.verified = ok;
    out.rows.push_back({std::to_string(w->a), std::to_string(w->q), std::to_string(m), compact(w->x1), compact(w->x2),
                        ok ? "witness" : "unverified"});
    return out;
}

inline outcome cmd_nested(context& ctx) {
    const auto shift = parse_shift(ctx);
    if (shift.space.side != laterality::unilateral) throw schema_error("laterality", "unilateral backward shifts only");
    const auto u = parse_ball_in(ctx, "ball", shift.space);
    const auto stages = ctx.integer_at_least("stages", 0);
    const auto q_max = ctx.bound("bounds.q_max", 1000, 1);
    const auto result = nested_ball_refinement(shift.weights, shift.space, u, stages, q_max);

    json list = json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t s = 0; s < result.stages.size(); ++s) {
        const auto& st = result.stages[s];
        list.push_back({{"stage", s}, {"q", st.q ? json(*st.q) : json(nullptr)}, {"ball", io::to_json(st.region)}});
        rows.push_back({std::to_string(s), opt_text(st.q), format_rational(st.region.radius), compact(st.region.center)});
    }
    json body{{"stages", list}, {"point", io::to_json(result.point)}};
    if (result.failed_stage) {
        body["failed_stage"] = *result.failed_stage;
        auto out = exhausted(body, "no witness within q_max at the failed stage; not a refutation");
        out.rows = std::move(rows);
        return out;
    }
    auto out = verified("witness", body);
    out.rows = std::move(rows);
    return out;
}

template <class S>
outcome puig_impl(context& ctx) {
    const auto op = parse_operator_at(ctx);
    const auto space = operator_space(op);
    const auto scalars = parse_scalars_for(ctx);
    auto x0 = io::parse_vector(ctx.need("x"), "x");
    check_laterality(x0, space.side);
    const auto u = parse_ball_in(ctx, "ball", space);
    const auto m = recurrence_m(ctx);
    const auto q = ctx.integer_at_least("q", 1);
    const auto horizon = ctx.bound("horizon", 100, 0);
    const auto count = puig_count<S>(scalars, op, x0.convert<S>(), u.template convert<S>(), m, q, horizon);
    auto out = verified("value", {{"count", count}, {"m", m}, {"q", q}});
    out.rows.push_back({std::to_string(m), std::to_string(q), std::to_string(horizon), std::to_string(count)});
    return out;
}

template <template <class> class Impl>
outcome by_mode(context& ctx) {
    return ctx.exact() ? Impl<rational>::run(ctx) : Impl<double>::run(ctx);
}

template <class S>
struct orbit_cmd {
    static outcome run(context& ctx) { return orbit_impl<S>(ctx); }
};
template <class S>
struct return_set_cmd {
    static outcome run(context& ctx) { return return_set_impl<S>(ctx); }
};
template <class S>
struct universal_cmd {
    static outcome run(context& ctx) { return universal_impl<S>(ctx); }
};
template <class S>
struct puig_cmd {
    static outcome run(context& ctx) { return puig_impl<S>(ctx); }
};

// ---------------------------------------------------------------- command table

struct flag_def {
    std::string name;  // without "--"
    std::string key;   // dotted config path
    std::string help;
};

struct command_def {
    std::string name;
    std::string help;
    std::vector<flag_def> flags;
    std::vector<std::string> csv_header;
    bool float_ok = false;
    bool csv_default = false;
    std::function<outcome(context&)> handler;
};

inline const std::vector<command_def>& commands() {
    static const std::vector<command_def> table = {
        {"analyze-set",
         "longest progression and density proxies of a finite set (stdin or --set)",
         {{"set", "set", "JSON array of naturals; read from stdin when absent"},
          {"window", "window", "Banach density window"},
          {"length", "length", "also search a progression with this many terms"},
          {"threshold", "threshold", "with --length: same-step progression count required"},
          {"homogeneous", "homogeneous", "also search {q, 2q, ..., mq} with this many terms"}},
         {"size", "horizon", "initial", "step", "length", "lower_proxy", "upper_proxy", "banach_upper_proxy", "window"},
         false,
         false,
         cmd_analyze_set},
        {"orbit",
         "orbit of x under an operator, optionally scaled",
         {{"operator", "operator", "operator JSON"},
          {"x", "x", "start vector"},
          {"scalars", "scalars", "scalar sequence"},
          {"p", "p", "norm exponent for the reported norms"}},
         {"n", "norm", "norm_squared", "support_size", "vector"},
         true,
         false,
         by_mode<orbit_cmd>},
        {"return-set",
         "return times of an orbit to a ball",
         {{"operator", "operator", "operator JSON"},
          {"x", "x", "start vector"},
          {"scalars", "scalars", "scalar sequence"},
          {"ball", "ball", "ball JSON"}},
         {"n"},
         true,
         false,
         by_mode<return_set_cmd>},
        {"shift-check",
         "progression criterion grid for a weighted backward shift",
         {{"operator", "operator", "backward shift JSON"},
          {"weights", "weights", "weights JSON (instead of --operator)"},
          {"epsilon", "epsilon", "threshold, a rational"},
          {"p-max", "bounds.p_max", "largest basis position"},
          {"m-max", "bounds.m_max", "largest m"},
          {"q-max", "bounds.q_max", "largest step"}},
         {"p", "m", "q", "verdict"},
         false,
         false,
         cmd_shift_check},
        {"multirec",
         "lift-sum witness of multiple recurrence in a ball",
         {{"operator", "operator", "backward shift JSON"},
          {"weights", "weights", "weights JSON (instead of --operator)"},
          {"ball", "ball", "ball JSON"},
          {"m", "m", "memberships j = 0..m"},
          {"length", "length", "number of memberships (m + 1)"},
          {"q-max", "bounds.q_max", "largest step"}},
         {"q", "m", "terms", "x", "verdict"},
         false,
         false,
         cmd_multirec},
        {"universal",
         "progression-universal vector for scaled backward shifts",
         {{"scalars", "scalars", "scalar sequence"},
          {"y", "y", "target vector"},
          {"m", "m", "levels l = 1..m"},
          {"k", "k", "block step, beyond the support of y"},
          {"p", "p", "norm exponent"}},
         {"m", "k", "p", "max_error", "squared", "worst_l"},
         true,
         false,
         by_mode<universal_cmd>},
        {"gowers",
         "inversion of f(t) = t / 2^sqrt(log log log t) and the resulting bounds",
         {{"l", "l", "level or JSON list of levels"}, {"l-min", "l_min", "first level"}, {"l-max", "l_max", "last level"}},
         {"l", "m_l", "f_at_m_l", "bound_r3", "k_of_n", "vacuous_flag"},
         true,
         true,
         cmd_gowers},
        {"szemeredi",
         "largest subset of {1..n} without a k-term progression",
         {{"n", "n", "interval length"}, {"k", "k", "progression length (default 3)"}},
         {"n", "k", "r"},
         false,
         true,
         cmd_szemeredi},
        {"vdw",
         "two-colour van der Waerden check on {1..N}",
         {{"n", "n", "interval length N"}, {"k", "k", "progression length (default 3)"}},
         {"n", "k", "forced", "coloring"},
         false,
         true,
         cmd_vdw},
        {"pair-search",
         "points x1, x2 in U whose orbits return to V1, V2 along a progression",
         {{"operator", "operator", "backward shift JSON"},
          {"weights", "weights", "weights JSON (instead of --operator)"},
          {"ball", "ball", "ball U"},
          {"v1", "v1", "ball V1"},
          {"v2", "v2", "ball V2"},
          {"m", "m", "memberships j = 0..m"},
          {"length", "length", "number of memberships (m + 1)"},
          {"a-max", "bounds.a_max", "largest offset"},
          {"q-max", "bounds.q_max", "largest step"}},
         {"a", "q", "m", "x1", "x2", "verdict"},
         false,
         false,
         cmd_pair_search},
        {"nested",
         "nested balls with shrinking radii and multiply recurrent centres",
         {{"operator", "operator", "backward shift JSON"},
          {"weights", "weights", "weights JSON (instead of --operator)"},
          {"ball", "ball", "starting ball"},
          {"stages", "stages", "number of refinement stages"},
          {"q-max", "bounds.q_max", "largest step per stage"}},
         {"stage", "q", "radius", "center"},
         false,
         false,
         cmd_nested},
        {"puig-count",
         "count of a <= horizon with lambda_a T^(a+iq) x in U for i = 0..m",
         {{"operator", "operator", "operator JSON"},
          {"scalars", "scalars", "scalar sequence"},
          {"x", "x", "vector"},
          {"ball", "ball", "ball JSON"},
          {"m", "m", "memberships i = 0..m"},
          {"length", "length", "number of memberships (m + 1)"},
          {"q", "q", "step"}},
         {"m", "q", "horizon", "count"},
         true,
         false,
         by_mode<puig_cmd>},
    };
    return table;
}

inline const command_def* find_command(const std::string& name) {
    for (const auto& c : commands())
        if (c.name == name) return &c;
    return nullptr;
}

// ---------------------------------------------------------------- execution

enum class output_format { json, csv };

struct invocation {
    const command_def* command = nullptr;
    json config = json::object();
    std::optional<output_format> format;
};

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Top-level keys accepted by a subcommand, beyond the common ones.
inline void check_keys(const command_def& def, const json& config) {
    if (!config.is_object()) throw schema_error("<root>", "config must be a JSON object");
    for (const auto& [key, value] : config.items()) {
        if (key == "mode" || key == "horizon" || key == "budget") continue;
        bool known = false;
        for (const auto& f : def.flags) known = known || f.key.substr(0, f.key.find('.')) == key;
        if (!known) throw schema_error(key, "unknown key for " + def.name);
    }
}

inline mode parse_mode(const command_def& def, const json& config) {
    auto m = lookup(config, "mode");
    if (!m) return mode::exact;
    if (!m->is_string() || (*m != "exact" && *m != "float")) throw schema_error("mode", "expected \"exact\" or \"float\"");
    if (*m == "float") {
        if (!def.float_ok) throw schema_error("mode", def.name + " runs in exact arithmetic only");
        return mode::floating;
    }
    return mode::exact;
}

struct report {
    int code = 0;
    json body;  // full JSON report
    std::vector<std::vector<std::string>> rows;
    std::string diagnostic;  // for exit code 2
};

inline report execute(const command_def& def, const json& config, input_source& in) {
    report rep;
    try {
        check_keys(def, config);
        const auto md = parse_mode(def, config);
        context ctx(config, md, in);
        outcome out = def.handler(ctx);
        rep.code = out.verified ? out.exit_code() : 1;
        json body = std::move(out.body);
        body["command"] = def.name;
        body["config"] = ctx.echo();
        body["mode"] = def.name == "gowers" ? "float" : to_string(md);
        body["bounds"] = ctx.provenance();
        body["verdict"] = out.verdict;
        body["verified"] = out.verified;
        if (!out.verified && out.verdict != "exhausted") {
            body["inconclusive"] = true;
            body["note"] = "independent re-check failed; result withheld";
        }
        rep.body = std::move(body);
        rep.rows = std::move(out.rows);
    } catch (const schema_error& e) {
        rep.code = 2;
        rep.diagnostic = e.what();
        rep.body = {{"command", def.name},
                    {"verdict", "error"},
                    {"verified", false},
                    {"error", {{"field", e.field()}, {"message", e.what()}}}};
    } catch (const std::out_of_range& e) {
        rep.code = 2;
        rep.diagnostic = std::string("out of range: ") + e.what();
        rep.body = {{"command", def.name}, {"verdict", "error"}, {"verified", false}, {"error", {{"message", rep.diagnostic}}}};
    } catch (const std::invalid_argument& e) {
        rep.code = 2;
        rep.diagnostic = e.what();
        rep.body = {{"command", def.name}, {"verdict", "error"}, {"verified", false}, {"error", {{"message", e.what()}}}};
    }
    return rep;
}

inline json load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw schema_error("--config", "cannot open '" + path + "'");
    try {
        auto j = json::parse(file);
        if (!j.is_object()) throw schema_error("--config", "top level must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw schema_error("--config", e.what());
    }
}

/// Parses "<subcommand> [flags]" into a command and merged config (file first, flags on top).
inline invocation parse_invocation(const std::vector<std::string>& args) {
    CLI::App app{"aprec: arithmetic-progression recurrence workbench"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    struct bound_flags {
        const command_def* def;
        CLI::App* app;
        std::string config_file, mode, output, horizon, budget;
        std::vector<std::pair<std::string, std::string>> values;  // key, text
    };
    std::vector<std::unique_ptr<bound_flags>> subs;
    for (const auto& def : commands()) {
        auto b = std::make_unique<bound_flags>();
        b->def = &def;
        b->app = app.add_subcommand(def.name, def.help);
        b->app->add_option("--config", b->config_file, "experiment config JSON file");
        b->app->add_option("--mode", b->mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        b->app->add_option("--output", b->output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        b->app->add_option("--horizon", b->horizon, "horizon");
        b->app->add_option("--budget", b->budget, "exhaustive-search budget");
        b->values.resize(def.flags.size());
        for (std::size_t i = 0; i < def.flags.size(); ++i) {
            b->values[i].first = def.flags[i].key;
            b->app->add_option("--" + def.flags[i].name, b->values[i].second, def.flags[i].help);
        }
        subs.push_back(std::move(b));
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    for (const auto& b : subs) {
        if (!b->app->parsed()) continue;
        invocation inv;
        inv.command = b->def;
        if (b->app->count("--config")) inv.config = load_config_file(b->config_file);
        if (b->app->count("--mode")) inv.config["mode"] = b->mode;
        if (b->app->count("--horizon")) inv.config["horizon"] = flag_value(b->horizon);
        if (b->app->count("--budget")) inv.config["budget"] = flag_value(b->budget);
        for (std::size_t i = 0; i < b->def->flags.size(); ++i)
            if (b->app->count("--" + b->def->flags[i].name)) assign(inv.config, b->values[i].first, flag_value(b->values[i].second));
        if (b->app->count("--output")) inv.format = b->output == "csv" ? output_format::csv : output_format::json;
        return inv;
    }
    throw usage_error("no subcommand");
}

struct grid_axis {
    std::string key;
    std::vector<json> values;
};

/// "key=v1,v2,...", "key=a..b" (integers, inclusive) or "key=[json, ...]". "key=" is an empty axis.
inline grid_axis parse_grid_axis(const std::string& spec) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) throw schema_error("--grid", "expected key=values, got '" + spec + "'");
    grid_axis axis{spec.substr(0, eq), {}};
    const auto text = spec.substr(eq + 1);
    if (!text.empty() && text.front() == '[') {
        try {
            for (auto& v : json::parse(text)) axis.values.push_back(v);
        } catch (const json::parse_error& e) {
            throw schema_error("--grid " + axis.key, e.what());
        }
        return axis;
    }
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        auto dots = item.find("..");
        if (dots != std::string::npos) {
            auto lo = flag_value(item.substr(0, dots));
            auto hi = flag_value(item.substr(dots + 2));
            if (!lo.is_number_integer() || !hi.is_number_integer())
                throw schema_error("--grid " + axis.key, "ranges need integer ends: '" + item + "'");
            for (auto v = lo.get<std::int64_t>(); v <= hi.get<std::int64_t>(); ++v) {
                axis.values.push_back(v);
                if (axis.values.size() > max_sweep_points) throw schema_error("--grid " + axis.key, "range too large");
            }
        } else {
            axis.values.push_back(flag_value(item));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return axis;
}

inline int finish_error(const std::string& message, std::ostream& err) {
    err << "aprec: error: " << message << '\n';
    return 2;
}

inline void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline int run_sweep(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    // aprec sweep <subcommand> --grid key=values [--grid ...] [subcommand flags]
    std::vector<grid_axis> axes;
    std::vector<std::string> rest;
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--grid") {
                if (i + 1 >= args.size()) throw schema_error("--grid", "missing value");
                axes.push_back(parse_grid_axis(args[++i]));
            } else if (args[i].rfind("--grid=", 0) == 0) {
                axes.push_back(parse_grid_axis(args[i].substr(7)));
            } else {
                rest.push_back(args[i]);
            }
        }
    } catch (const schema_error& e) {
        return finish_error(e.what(), err);
    }
    if (rest.empty()) return finish_error("sweep needs a subcommand", err);
    if (!find_command(rest[0])) return finish_error("unknown subcommand '" + rest[0] + "'", err);

    invocation inv;
    try {
        inv = parse_invocation(rest);
    } catch (const CLI::Error& e) {
        return finish_error(e.what(), err);
    } catch (const schema_error& e) {
        return finish_error(e.what(), err);
    }
    const auto& def = *inv.command;
    const auto format = inv.format.value_or(def.csv_default ? output_format::csv : output_format::json);

    std::size_t points = 1;
    for (const auto& a : axes) {
        points *= a.values.size();
        if (points > max_sweep_points) return finish_error("sweep grid exceeds " + std::to_string(max_sweep_points) + " points", err);
    }
    if (axes.empty()) points = 1;

    input_source source(in);
    json reports = json::array();
    std::vector<std::vector<std::string>> rows;
    int code = 0;
    std::vector<std::size_t> index(axes.size(), 0);
    for (std::size_t point = 0; point < points; ++point) {
        // Row-major: the first axis varies slowest.
        std::size_t rem = point;
        for (std::size_t a = axes.size(); a-- > 0;) {
            index[a] = rem % axes[a].values.size();
            rem /= axes[a].values.size();
        }
        json config = inv.config;
        std::vector<std::string> prefix;
        for (std::size_t a = 0; a < axes.size(); ++a) {
            const auto& v = axes[a].values[index[a]];
            assign(config, axes[a].key, v);
            prefix.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        auto rep = execute(def, config, source);
        if (rep.code == 2) {
            std::string where;
            for (std::size_t a = 0; a < axes.size(); ++a) where += (a ? ", " : "") + axes[a].key + "=" + prefix[a];
            return finish_error(rep.diagnostic + (where.empty() ? "" : " (at grid point " + where + ")"), err);
        }
        code = std::max(code, rep.code);
        reports.push_back(std::move(rep.body));
        for (auto& r : rep.rows) {
            std::vector<std::string> row = prefix;
            row.insert(row.end(), r.begin(), r.end());
            rows.push_back(std::move(row));
        }
    }

    if (format == output_format::csv) {
        std::vector<std::string> header;
        for (const auto& a : axes) header.push_back("grid." + a.key);
        header.insert(header.end(), def.csv_header.begin(), def.csv_header.end());
        write_csv_row(out, header);
        for (const auto& r : rows) write_csv_row(out, r);
    } else {
        json grid = json::array();
        for (const auto& a : axes) grid.push_back({{"key", a.key}, {"values", a.values}});
        print_json(out, {{"command", "sweep"}, {"subcommand", def.name}, {"grid", grid}, {"reports", reports}});
    }
    return code;
}

inline void print_usage(std::ostream& out) {
    out << "usage: aprec <subcommand> [flags]\n"
           "       aprec sweep <subcommand> --grid key=v1,v2|a..b [--grid ...] [flags]\n\n"
           "common flags: --config FILE --mode exact|float --output json|csv --horizon N --budget N\n\n"
           "subcommands:\n";
    for (const auto& c : commands()) out << "  " << c.name << std::string(14 - c.name.size(), ' ') << c.help << '\n';
    out << "\nexit codes: 0 verified result, 1 search exhausted (inconclusive), 2 invalid input\n";
}

/// Entry point. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        print_usage(err);
        return 2;
    }
    if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        print_usage(out);
        return 0;
    }
    if (args[0] == "sweep") return run_sweep({args.begin() + 1, args.end()}, in, out, err);
    if (!find_command(args[0])) return finish_error("unknown subcommand '" + args[0] + "'", err);

    invocation inv;
    try {
        inv = parse_invocation(args);
    } catch (const CLI::CallForHelp&) {
        // Help for a single subcommand.
        if (auto def = find_command(args[0])) {
            out << "usage: aprec " << def->name << " [flags]\n" << def->help << "\n\nflags:\n";
            for (const auto& f : def->flags) out << "  --" << f.name << "  " << f.help << '\n';
            out << "  --config --mode --output --horizon --budget\n";
        } else {
            print_usage(out);
        }
        return 0;
    } catch (const CLI::Error& e) {
        return finish_error(e.what(), err);
    } catch (const schema_error& e) {
        return finish_error(e.what(), err);
    }
    const auto& def = *inv.command;
    const auto format = inv.format.value_or(def.csv_default ? output_format::csv : output_format::json);

    input_source source(in);
    auto rep = execute(def, inv.config, source);
    if (rep.code == 2) {
        if (format == output_format::json) print_json(out, rep.body);
        return finish_error(rep.diagnostic, err);
    }
    if (format == output_format::csv) {
        write_csv_row(out, def.csv_header);
        for (const auto& r : rep.rows) write_csv_row(out, r);
        if (rep.code == 1) err << "aprec: search exhausted within bounds (inconclusive, not a refutation)\n";
    } else {
        print_json(out, rep.body);
    }
    return rep.code;
}

}  // namespace aprec::cli
