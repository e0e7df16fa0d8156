#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "debranges/canonical_product.hpp"
#include "debranges/errors.hpp"
#include "debranges/types.hpp"
#include "debranges/zero_sequence.hpp"

namespace debranges {

struct FunctionNode;

/// An entire function drawn from a family that is closed under f -> f#.
///
/// Handles are immutable and share structure, so copies are cheap and
/// evaluation is safe from several threads at once.
class EntireFunction {
public:
    EntireFunction();  // the zero function
    explicit EntireFunction(std::shared_ptr<const FunctionNode> node) : node_(std::move(node)) {}

    const FunctionNode& node() const noexcept { return *node_; }
    /// True when the function is known to satisfy f# = f.
    bool flagged_real() const noexcept;
    EntireFunction with_real_flag() const;

private:
    std::shared_ptr<const FunctionNode> node_;
};

/// exp(-i * rate * z).
struct Exponential {
    cplx rate;
};

/// Sum of coeffs[k] z^k.
struct Polynomial {
    std::vector<cplx> coeffs;
};

struct LinearCombination {
    std::vector<std::pair<cplx, EntireFunction>> terms;
};

/// Symmetric-limit product over real zeros (z-prefactor when 0 is a zero).
struct CanonicalProduct {
    ZeroSequence zeros;
    TruncationSchedule schedule;
};

struct Product {
    EntireFunction lhs;
    EntireFunction rhs;
};

/// (N(z) - N(node)) / (z - node), continued analytically through z = node.
struct DividedDifference {
    EntireFunction numerator;
    cplx node;
    /// N and N' at the node, fixed at construction.
    Jet numerator_at_node;
    /// Radius of the contour used for evaluation close to the node.
    double contour_radius = 0.125;
};

using FunctionVariant =
    std::variant<Exponential, Polynomial, LinearCombination, CanonicalProduct, Product, DividedDifference>;

struct FunctionNode {
    FunctionVariant variant;
    bool real = false;
};

inline EntireFunction::EntireFunction()
    : node_(std::make_shared<const FunctionNode>(FunctionNode{Polynomial{{}}, true})) {}

inline bool EntireFunction::flagged_real() const noexcept { return node_->real; }

inline EntireFunction EntireFunction::with_real_flag() const {
    if (node_->real) return *this;
    return EntireFunction(std::make_shared<const FunctionNode>(FunctionNode{node_->variant, true}));
}

/// Value, derivative and accumulated truncation error of one evaluation.
struct Evaluation {
    Jet jet;
    double truncation_error = 0.0;
};

Evaluation evaluate_detailed(const EntireFunction& f, cplx z, bool want_deriv = true);

inline cplx evaluate(const EntireFunction& f, cplx z) { return evaluate_detailed(f, z, false).jet.value; }
inline Jet evaluate_jet(const EntireFunction& f, cplx z) { return evaluate_detailed(f, z, true).jet; }

// ---------------------------------------------------------------------------
// construction

namespace detail {
    inline void require_finite(cplx c, const char* what) {
        if (!is_finite(c)) throw MalformedFunction(std::string("non-finite parameter in ") + what);
    }
    inline EntireFunction make(FunctionVariant v, bool real = false) {
        return EntireFunction(std::make_shared<const FunctionNode>(FunctionNode{std::move(v), real}));
    }
}  // namespace detail

inline EntireFunction exponential(cplx rate) {
    detail::require_finite(rate, "exponential");
    // exp(-i a z) is real entire iff a is purely imaginary
    return detail::make(Exponential{rate}, rate.real() == 0.0);
}

inline EntireFunction polynomial(std::vector<cplx> coeffs) {
    bool real = true;
    for (cplx c : coeffs) {
        detail::require_finite(c, "polynomial");
        real = real && c.imag() == 0.0;
    }
    while (!coeffs.empty() && coeffs.back() == cplx{0.0}) coeffs.pop_back();
    return detail::make(Polynomial{std::move(coeffs)}, real);
}

inline EntireFunction constant(cplx c) { return polynomial({c}); }

inline EntireFunction linear_combination(std::vector<std::pair<cplx, EntireFunction>> terms) {
    bool real = true;
    for (const auto& [w, f] : terms) {
        detail::require_finite(w, "linear combination");
        real = real && w.imag() == 0.0 && f.flagged_real();
    }
    return detail::make(LinearCombination{std::move(terms)}, real);
}

inline EntireFunction canonical_product_function(ZeroSequence zeros, TruncationSchedule schedule = {}) {
    return detail::make(CanonicalProduct{std::move(zeros), schedule}, true);
}

inline EntireFunction product(EntireFunction lhs, EntireFunction rhs) {
    const bool real = lhs.flagged_real() && rhs.flagged_real();
    return detail::make(Product{std::move(lhs), std::move(rhs)}, real);
}

inline EntireFunction divided_difference(EntireFunction numerator, cplx node, double contour_radius = 0.125) {
    detail::require_finite(node, "divided difference");
    if (!(contour_radius > 0.0)) throw MalformedFunction("divided difference needs a positive contour radius");
    const Jet at_node = evaluate_jet(numerator, node);
    const bool real = numerator.flagged_real() && node.imag() == 0.0;
    return detail::make(DividedDifference{std::move(numerator), node, at_node, contour_radius}, real);
}

inline EntireFunction operator+(const EntireFunction& a, const EntireFunction& b) {
    return linear_combination({{1.0, a}, {1.0, b}});
}
inline EntireFunction operator-(const EntireFunction& a, const EntireFunction& b) {
    return linear_combination({{1.0, a}, {-1.0, b}});
}
inline EntireFunction operator*(cplx c, const EntireFunction& f) { return linear_combination({{c, f}}); }
inline EntireFunction operator*(const EntireFunction& a, const EntireFunction& b) { return product(a, b); }

// ---------------------------------------------------------------------------
// evaluation

namespace detail {

    inline constexpr int contour_points = 32;

    inline Evaluation eval(const FunctionNode& n, cplx z, bool want_deriv);

    inline Evaluation eval_divided(const DividedDifference& d, cplx z, bool want_deriv) {
        const cplx n0 = d.numerator_at_node.value;
        const cplx dz = z - d.node;
        const double near = d.contour_radius / 8.0;
        if (std::abs(dz) >= near) {
            const Evaluation num = eval(d.numerator.node(), z, want_deriv);
            const cplx q = (num.jet.value - n0) / dz;
            Evaluation out;
            out.jet.value = q;
            if (want_deriv) out.jet.deriv = (num.jet.deriv - q) / dz;
            out.truncation_error = num.truncation_error / std::abs(dz);
            return out;
        }
        if (dz == cplx{0.0} && !want_deriv) return {{d.numerator_at_node.deriv, 0.0}, 0.0};

        // Cauchy integral over a circle around the node; the integrand stays away
        // from the cancellation near z = node.
        Evaluation out;
        for (int k = 0; k < contour_points; ++k) {
            const double theta = 2.0 * pi * (k + 0.5) / contour_points;
            const cplx zeta = d.node + d.contour_radius * std::polar(1.0, theta);
            const Evaluation num = eval(d.numerator.node(), zeta, false);
            const cplx diff = num.jet.value - n0;
            const cplx w = 1.0 / (zeta - z);
            out.jet.value += diff * w;
            if (want_deriv) out.jet.deriv += diff * w * w;
            out.truncation_error = std::max(out.truncation_error, num.truncation_error);
        }
        out.jet.value /= static_cast<double>(contour_points);
        out.jet.deriv /= static_cast<double>(contour_points);
        out.truncation_error /= d.contour_radius * 0.875;
        return out;
    }

    inline Evaluation eval(const FunctionNode& n, cplx z, bool want_deriv) {
        return std::visit(
            [&](const auto& v) -> Evaluation {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Exponential>) {
                    const cplx k = -I * v.rate;
                    const cplx val = std::exp(k * z);
                    return {{val, want_deriv ? k * val : cplx{}}, 0.0};
                } else if constexpr (std::is_same_v<T, Polynomial>) {
                    Jet acc{};
                    for (auto it = v.coeffs.rbegin(); it != v.coeffs.rend(); ++it) {
                        if (want_deriv) acc.deriv = acc.deriv * z + acc.value;
                        acc.value = acc.value * z + *it;
                    }
                    return {acc, 0.0};
                } else if constexpr (std::is_same_v<T, LinearCombination>) {
                    Evaluation out;
                    for (const auto& [w, f] : v.terms) {
                        const Evaluation e = eval(f.node(), z, want_deriv);
                        out.jet += w * e.jet;
                        out.truncation_error += std::abs(w) * e.truncation_error;
                    }
                    return out;
                } else if constexpr (std::is_same_v<T, CanonicalProduct>) {
                    const ProductEstimate p = canonical_product(v.zeros, z, v.schedule, want_deriv);
                    if (!p.converged) {
                        throw InconclusiveProduct("canonical product did not settle at z = (" + std::to_string(z.real()) +
                                                  ", " + std::to_string(z.imag()) + ")");
                    }
                    return {{p.value, p.deriv}, p.error_bound};
                } else if constexpr (std::is_same_v<T, Product>) {
                    const Evaluation a = eval(v.lhs.node(), z, want_deriv);
                    const Evaluation b = eval(v.rhs.node(), z, want_deriv);
                    return {a.jet * b.jet, std::abs(a.jet.value) * b.truncation_error +
                                               std::abs(b.jet.value) * a.truncation_error};
                } else {
                    return eval_divided(v, z, want_deriv);
                }
            },
            n.variant);
    }

}  // namespace detail

inline Evaluation evaluate_detailed(const EntireFunction& f, cplx z, bool want_deriv) {
    if (!is_finite(z)) throw ConfigurationError("evaluation point must be finite");
    return detail::eval(f.node(), z, want_deriv);
}

// ---------------------------------------------------------------------------
// the # conjugation

/// f#(z) = conj(f(conj z)).
inline EntireFunction sharp(const EntireFunction& f) {
    if (f.flagged_real()) return f;
    return std::visit(
        [&](const auto& v) -> EntireFunction {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                return exponential(-std::conj(v.rate));
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                std::vector<cplx> c(v.coeffs);
                for (cplx& x : c) x = std::conj(x);
                return polynomial(std::move(c));
            } else if constexpr (std::is_same_v<T, LinearCombination>) {
                std::vector<std::pair<cplx, EntireFunction>> terms;
                terms.reserve(v.terms.size());
                for (const auto& [w, g] : v.terms) terms.emplace_back(std::conj(w), sharp(g));
                return linear_combination(std::move(terms));
            } else if constexpr (std::is_same_v<T, CanonicalProduct>) {
                return f;
            } else if constexpr (std::is_same_v<T, Product>) {
                return product(sharp(v.lhs), sharp(v.rhs));
            } else {
                return divided_difference(sharp(v.numerator), std::conj(v.node), v.contour_radius);
            }
        },
        f.node().variant);
}

// ---------------------------------------------------------------------------
// polynomial reduction

namespace detail {
    inline std::vector<cplx> poly_add(std::vector<cplx> a, const std::vector<cplx>& b, cplx w) {
        if (a.size() < b.size()) a.resize(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) a[i] += w * b[i];
        return a;
    }
    inline std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<cplx> c(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    }
}  // namespace detail

/// Coefficients (ascending) when f reduces to a polynomial, otherwise nullopt.
inline std::optional<std::vector<cplx>> to_polynomial(const EntireFunction& f) {
    return std::visit(
        [&](const auto& v) -> std::optional<std::vector<cplx>> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Exponential>) {
                if (v.rate == cplx{0.0}) return std::vector<cplx>{1.0};
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, Polynomial>) {
                return v.coeffs;
            } else if constexpr (std::is_same_v<T, LinearCombination>) {
                std::vector<cplx> acc;
                for (const auto& [w, g] : v.terms) {
                    auto p = to_polynomial(g);
                    if (!p) return std::nullopt;
                    acc = detail::poly_add(std::move(acc), *p, w);
                }
                return acc;
            } else if constexpr (std::is_same_v<T, CanonicalProduct>) {
                if (!v.zeros.is_finite()) return std::nullopt;
                std::vector<cplx> acc{1.0};
                if (v.zeros.has_origin()) acc = {0.0, 1.0};
                for (double b : v.zeros.by_modulus()) acc = detail::poly_mul(acc, {1.0, -1.0 / b});
                return acc;
            } else if constexpr (std::is_same_v<T, Product>) {
                auto a = to_polynomial(v.lhs);
                auto b = to_polynomial(v.rhs);
                if (!a || !b) return std::nullopt;
                return detail::poly_mul(*a, *b);
            } else {
                auto p = to_polynomial(v.numerator);
                if (!p) return std::nullopt;
                // synthetic division of p(z) - p(node) by (z - node)
                const std::size_t n = p->size();
                if (n <= 1) return std::vector<cplx>{};
                std::vector<cplx> q(n - 1);
                q[n - 2] = (*p)[n - 1];
                for (std::size_t k = n - 2; k > 0; --k) q[k - 1] = (*p)[k] + v.node * q[k];
                return q;
            }
        },
        f.node().variant);
}

/// Checks |f(x) - conj f(x)| <= tol (1 + |f(x)|) over a real grid.
inline bool is_real_entire(const EntireFunction& f, std::span<const double> grid, double tol = 1e-12) {
    for (double x : grid) {
        const cplx v = evaluate(f, x);
        if (std::abs(v - std::conj(v)) > tol * (1.0 + std::abs(v))) return false;
    }
    return true;
}

}  // namespace debranges
