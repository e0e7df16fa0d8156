#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "debranges/entire_function.hpp"
#include "debranges/errors.hpp"
#include "debranges/types.hpp"

namespace debranges {

/// Sample points used to validate the Hermite-Biehler inequality.
struct SampleGrid {
    std::vector<cplx> upper;   ///< points with Im z > 0
    std::vector<double> real;  ///< points on the real axis

    /// Moderate rectangle in the upper half-plane plus a real window.
    static SampleGrid standard() {
        SampleGrid g;
        for (double y : {0.05, 0.25, 1.0, 2.5}) {
            for (double x = -6.0; x <= 6.0; x += 0.5) g.upper.emplace_back(x, y);
        }
        for (double x = -8.0; x <= 8.0; x += 0.125) g.real.push_back(x);
        return g;
    }
};

struct ValidationReport {
    /// min(|e(z)| - |e#(z)|) over the upper samples.
    double upper_margin = std::numeric_limits<double>::infinity();
    /// Where the margin is attained.
    cplx worst_upper{};
    /// min |e(x)| over the real samples (infinity when there are none).
    double real_min_modulus = std::numeric_limits<double>::infinity();
    bool accepted = false;
    std::size_t samples = 0;
};

inline ValidationReport validate_hermite_biehler(const EntireFunction& e, const SampleGrid& grid) {
    if (grid.upper.empty() && grid.real.empty()) throw ConfigurationError("empty validation grid");
    const EntireFunction es = sharp(e);
    ValidationReport r;
    for (cplx z : grid.upper) {
        if (!(z.imag() > 0.0)) throw ConfigurationError("upper grid point is not in the open upper half-plane");
        const double margin = std::abs(evaluate(e, z)) - std::abs(evaluate(es, z));
        if (margin < r.upper_margin) {
            r.upper_margin = margin;
            r.worst_upper = z;
        }
    }
    for (double x : grid.real) r.real_min_modulus = std::min(r.real_min_modulus, std::abs(evaluate(e, x)));
    r.samples = grid.upper.size() + grid.real.size();
    r.accepted = r.upper_margin > 0.0 && r.real_min_modulus > 0.0;
    return r;
}

/// A validated Hermite-Biehler function, optionally normalized so that
/// e(0) = 1 / sin(gamma0).
class HermiteBiehlerFunction {
public:
    HermiteBiehlerFunction(EntireFunction e, ValidationReport report, std::optional<double> gamma0)
        : e_(std::move(e)), sharp_(debranges::sharp(e_)), report_(report), gamma0_(gamma0) {}

    const EntireFunction& function() const noexcept { return e_; }
    const EntireFunction& sharp() const noexcept { return sharp_; }
    const ValidationReport& report() const noexcept { return report_; }
    std::optional<double> gamma0() const noexcept { return gamma0_; }

    cplx operator()(cplx z) const { return evaluate(e_, z); }

private:
    EntireFunction e_;
    EntireFunction sharp_;
    ValidationReport report_;
    std::optional<double> gamma0_;
};

/// Validates e without changing its normalization.
inline HermiteBiehlerFunction make_hermite_biehler(const EntireFunction& e,
                                                   const SampleGrid& grid = SampleGrid::standard()) {
    const ValidationReport r = validate_hermite_biehler(e, grid);
    if (!r.accepted) throw HypothesisViolation("function fails the Hermite-Biehler check on the validation grid");
    std::optional<double> gamma0;
    const cplx e0 = evaluate(e, 0.0);
    if (std::abs(e0.imag()) <= 1e-14 * std::abs(e0) && e0.real() >= 1.0) gamma0 = std::asin(1.0 / e0.real());
    return HermiteBiehlerFunction(e, r, gamma0);
}

/// Rescales e by a constant so that e(0) is real and at least 1, and records
/// gamma0 = arcsin(1/e(0)) on the branch (0, pi/2].
inline HermiteBiehlerFunction normalize_gauge(const EntireFunction& e,
                                              const SampleGrid& grid = SampleGrid::standard()) {
    const cplx e0 = evaluate(e, 0.0);
    if (std::abs(e0) == 0.0) throw NotNormalizable("e(0) = 0: no normalization e(0) = 1/sin(gamma) exists");
    const ValidationReport r = validate_hermite_biehler(e, grid);
    if (!r.accepted) throw HypothesisViolation("function fails the Hermite-Biehler check on the validation grid");

    const double mod = std::abs(e0);
    const cplx c = std::conj(e0) / mod * std::max(1.0, 1.0 / mod);
    const bool already = std::abs(c - cplx{1.0}) <= 1e-15;
    EntireFunction normalized = already ? e : c * e;
    const double e0_new = std::max(mod, 1.0);
    ValidationReport rn = r;
    rn.upper_margin *= std::abs(c);
    rn.real_min_modulus *= std::abs(c);
    return HermiteBiehlerFunction(std::move(normalized), rn, std::asin(std::min(1.0, 1.0 / e0_new)));
}

/// The real entire function s_beta = (i/2)[e^{i beta} e - e^{-i beta} e#].
struct SBeta {
    double beta = 0.0;
    EntireFunction function;
    /// Set when the requested angle was outside [0, pi) and got reduced.
    bool reduced = false;

    cplx operator()(cplx z) const { return evaluate(function, z); }
};

inline SBeta s_beta(const HermiteBiehlerFunction& e, double beta) {
    if (!std::isfinite(beta)) throw ConfigurationError("beta must be finite");
    const double b = reduce_mod_pi(beta);
    const bool reduced = !(beta >= 0.0 && beta < pi);
    const cplx a = 0.5 * I * std::polar(1.0, b);
    const cplx c = -0.5 * I * std::polar(1.0, -b);
    EntireFunction f = linear_combination({{a, e.function()}, {c, e.sharp()}}).with_real_flag();
    return {b, std::move(f), reduced};
}

/// The unique beta in [0, pi) with s_beta(x) = 0.
inline double beta_at(const HermiteBiehlerFunction& e, double x) {
    const cplx ex = e(x);
    if (std::abs(ex) == 0.0) throw HypothesisViolation("e(x) = 0 at a real point");
    return reduce_mod_pi(-std::arg(ex));
}

}  // namespace debranges
