#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "debranges/entire_function.hpp"
#include "debranges/errors.hpp"
#include "debranges/jacobi.hpp"
#include "debranges/space.hpp"
#include "debranges/zero_sequence.hpp"

namespace debranges::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// scalars

/// A complex number is either a JSON number or a two-element array [re, im].
inline cplx complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ParseError(where + ": expected a number or [re, im]");
}

inline json complex_to_json(cplx c) {
    if (c.imag() == 0.0) return c.real();
    return json::array({c.real(), c.imag()});
}

inline const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

inline std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError(where + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

inline json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Accepts either inline JSON text or a path to a JSON file.
inline json load_json_argument(const std::string& arg, const std::string& what) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse_json_text(arg, what);
    return parse_json_text(read_file(arg), what + " (" + arg + ")");
}

// ---------------------------------------------------------------------------
// function descriptors: {"variant": ..., "params": {...}}

inline EntireFunction function_from_json(const json& j, const std::string& where = "function") {
    const json& variant = require(j, "variant", where);
    if (!variant.is_string()) throw ParseError(where + ": \"variant\" must be a string");
    const json& p = require(j, "params", where);
    const std::string v = variant.get<std::string>();
    try {
        if (v == "exponential") return exponential(complex_from_json(require(p, "rate", where), where + ".rate"));
        if (v == "polynomial") {
            const json& c = require(p, "coefficients", where);
            if (!c.is_array()) throw ParseError(where + ".coefficients: expected an array");
            std::vector<cplx> coeffs;
            for (std::size_t i = 0; i < c.size(); ++i) coeffs.push_back(complex_from_json(c[i], where + ".coefficients"));
            return polynomial(std::move(coeffs));
        }
        if (v == "linear-combination") {
            const json& t = require(p, "terms", where);
            if (!t.is_array()) throw ParseError(where + ".terms: expected an array");
            std::vector<std::pair<cplx, EntireFunction>> terms;
            for (std::size_t i = 0; i < t.size(); ++i) {
                const std::string w = where + ".terms[" + std::to_string(i) + "]";
                terms.emplace_back(complex_from_json(require(t[i], "weight", w), w + ".weight"),
                                   function_from_json(require(t[i], "function", w), w + ".function"));
            }
            return linear_combination(std::move(terms));
        }
        if (v == "canonical-product") {
            std::vector<double> zeros = number_list(require(p, "zeros", where), where + ".zeros");
            Extent extent = Extent::finite;
            if (p.contains("extent")) {
                const std::string e = p.at("extent").get<std::string>();
                if (e == "truncated") extent = Extent::truncated;
                else if (e != "finite") throw ParseError(where + ".extent: expected \"finite\" or \"truncated\"");
            }
            return canonical_product_function(ZeroSequence(std::move(zeros), extent));
        }
        if (v == "product") {
            const json& f = require(p, "factors", where);
            if (!f.is_array() || f.size() != 2) throw ParseError(where + ".factors: expected two functions");
            return product(function_from_json(f[0], where + ".factors[0]"), function_from_json(f[1], where + ".factors[1]"));
        }
        if (v == "divided-difference") {
            return divided_difference(function_from_json(require(p, "numerator", where), where + ".numerator"),
                                      complex_from_json(require(p, "node", where), where + ".node"));
        }
    } catch (const json::exception& e) {
        throw ParseError(where + ": " + e.what());
    } catch (const ConfigurationError& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": unknown variant \"" + v + "\"");
}

inline json function_to_json(const EntireFunction& f) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return {{"variant", "exponential"}, {"params", {{"rate", complex_to_json(v.rate)}}}};
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                json c = json::array();
                for (cplx x : v.coeffs) c.push_back(complex_to_json(x));
                return {{"variant", "polynomial"}, {"params", {{"coefficients", c}}}};
            } else if constexpr (std::is_same_v<T, LinearCombination>) {
                json t = json::array();
                for (const auto& [w, g] : v.terms) t.push_back({{"weight", complex_to_json(w)}, {"function", function_to_json(g)}});
                return {{"variant", "linear-combination"}, {"params", {{"terms", t}}}};
            } else if constexpr (std::is_same_v<T, CanonicalProduct>) {
                return {{"variant", "canonical-product"},
                        {"params", {{"zeros", v.zeros.values()}, {"extent", v.zeros.is_finite() ? "finite" : "truncated"}}}};
            } else if constexpr (std::is_same_v<T, Product>) {
                return {{"variant", "product"}, {"params", {{"factors", {function_to_json(v.lhs), function_to_json(v.rhs)}}}}};
            } else {
                return {{"variant", "divided-difference"},
                        {"params", {{"numerator", function_to_json(v.numerator)}, {"node", complex_to_json(v.node)}}}};
            }
        },
        f.node().variant);
}

// ---------------------------------------------------------------------------
// space descriptors

inline DeBrangesSpace space_from_json(const json& j, std::optional<double> tol_quad = std::nullopt) {
    const std::string where = "space";
    const json& kind = require(j, "kind", where);
    if (!kind.is_string()) throw ParseError("space.kind must be a string");
    const std::string k = kind.get<std::string>();
    DeBrangesSpace space = [&] {
        if (k == "paley-wiener") {
            const json& a = require(j, "a", where);
            if (!a.is_number()) throw ParseError("space.a must be a number");
            return DeBrangesSpace::paley_wiener(a.get<double>());
        }
        if (k == "polynomial") {
            const json& n = require(j, "N", where);
            if (!n.is_number_integer()) throw ParseError("space.N must be an integer");
            return DeBrangesSpace::polynomial(n.get<int>());
        }
        if (k == "custom") return DeBrangesSpace::custom(function_from_json(require(j, "e", where), "space.e"));
        throw ParseError("space.kind: unknown kind \"" + k + "\"");
    }();
    if (tol_quad) {
        QuadratureSpec q = space.quadrature();
        q.tolerance = *tol_quad;
        space = space.with_quadrature(q);
    }
    return space;
}

// ---------------------------------------------------------------------------
// Jacobi descriptors: {"b": rule | [list], "q": rule | [list], "N": int}

inline SequenceRule rule_from_json(const json& j, const std::string& where) {
    if (j.is_array()) return SequenceRule::list(number_list(j, where));
    const json& rule = require(j, "rule", where);
    if (!rule.is_string()) throw ParseError(where + ".rule must be a string");
    const std::string r = rule.get<std::string>();
    auto number = [&](const char* key, std::optional<double> dflt = std::nullopt) {
        if (!j.contains(key)) {
            if (dflt) return *dflt;
            throw ParseError(where + ": missing field \"" + key + "\"");
        }
        if (!j.at(key).is_number()) throw ParseError(where + "." + key + " must be a number");
        return j.at(key).get<double>();
    };
    if (r == "constant") return SequenceRule::constant(number("value"));
    if (r == "geometric") return SequenceRule::geometric(number("ratio"), number("scale", 1.0));
    throw ParseError(where + ".rule: unknown rule \"" + r + "\"");
}

inline json rule_to_json(const SequenceRule& r) {
    switch (r.kind()) {
        case SequenceRule::Kind::constant: return {{"rule", "constant"}, {"value", r.value()}};
        case SequenceRule::Kind::geometric: return {{"rule", "geometric"}, {"ratio", r.ratio()}, {"scale", r.value()}};
        default: return r.values();
    }
}

inline JacobiMatrix jacobi_from_json(const json& j) {
    const json& n = require(j, "N", "matrix");
    if (!n.is_number_integer()) throw ParseError("matrix.N must be an integer");
    try {
        return JacobiMatrix(rule_from_json(require(j, "b", "matrix"), "matrix.b"),
                            rule_from_json(require(j, "q", "matrix"), "matrix.q"), n.get<int>());
    } catch (const ConfigurationError& e) {
        throw ParseError(std::string("matrix: ") + e.what());
    }
}

inline json jacobi_to_json(const JacobiMatrix& m) {
    return {{"b", rule_to_json(m.b_rule())}, {"q", rule_to_json(m.q_rule())}, {"N", m.order()}};
}

// ---------------------------------------------------------------------------
// spectra files

struct SpectrumInput {
    std::vector<double> values;
    /// Extent declared by the file itself (JSON "extent" field), if any.
    std::optional<Extent> extent;
};

/// CSV: one decimal per line, '#' starts a comment, blank lines ignored.
inline SpectrumInput parse_spectrum_csv(const std::string& text, const std::string& where) {
    SpectrumInput out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string field = line.substr(b, e - b + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != field.size() || !std::isfinite(v)) {
            throw ParseError(where + ":" + std::to_string(lineno) + ": not a decimal number: \"" + field + "\"");
        }
        out.values.push_back(v);
    }
    return out;
}

/// JSON {"x": [...], "extent": "finite" | "truncated"} or CSV, by content.
inline SpectrumInput read_spectrum(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const json j = parse_json_text(text, path);
        SpectrumInput out;
        out.values = number_list(require(j, "x", path), path + ".x");
        if (j.contains("extent")) {
            const std::string e = j.at("extent").is_string() ? j.at("extent").get<std::string>() : "";
            if (e == "finite") out.extent = Extent::finite;
            else if (e == "truncated") out.extent = Extent::truncated;
            else throw ParseError(path + ".extent: expected \"finite\" or \"truncated\"");
        }
        return out;
    }
    return parse_spectrum_csv(text, path);
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// One value per line, sorted.
inline std::string spectrum_to_csv(const ZeroSequence& zeros) {
    std::string out;
    for (double v : zeros.values()) out += format_double(v) + "\n";
    return out;
}

}  // namespace debranges::io
