#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "debranges/entire_function.hpp"
#include "debranges/errors.hpp"
#include "debranges/hermite_biehler.hpp"
#include "debranges/quadrature.hpp"
#include "debranges/types.hpp"
#include "debranges/zero_sequence.hpp"

namespace debranges {

enum class SpaceKind { paley_wiener, polynomial, custom };

/// The de Branges space B(e) of a Hermite-Biehler function e, with the
/// quadrature used for its inner product
///
///     <f, g> = integral of conj(f(x)) g(x) / |e(x)|^2 dx
///
/// (antilinear in the first argument). Polynomial e of degree N gives the
/// N-dimensional space of polynomials of degree below N; that basis is kept.
class DeBrangesSpace {
public:
    /// B(e^{-i a z}): entire functions of exponential type at most a, square integrable on R.
    static DeBrangesSpace paley_wiener(double a) {
        if (!(a > 0.0) || !std::isfinite(a)) throw ConfigurationError("Paley-Wiener type must be positive");
        QuadratureSpec q;
        q.panel_width = pi / (2.0 * a);
        q.initial_cutoff = 8.0 * pi / a;
        auto e = normalize_gauge(exponential(a));
        return DeBrangesSpace(SpaceKind::paley_wiener, std::move(e), q, std::nullopt, a);
    }

    /// B((-i)^N (z + i)^N), normalized so that e(0) = 1.
    static DeBrangesSpace polynomial(int n) {
        if (n < 1) throw ConfigurationError("polynomial space needs N >= 1");
        std::vector<cplx> coeffs{1.0};
        for (int k = 0; k < n; ++k) coeffs = detail::poly_mul(coeffs, {I, 1.0});
        cplx phase = 1.0;
        for (int k = 0; k < n; ++k) phase *= -I;
        for (cplx& c : coeffs) c *= phase;
        auto e = normalize_gauge(debranges::polynomial(std::move(coeffs)));
        QuadratureSpec q;
        q.initial_cutoff = 4.0;
        q.panel_width = 1e300;
        return DeBrangesSpace(SpaceKind::polynomial, std::move(e), q, n, 0.0);
    }

    static DeBrangesSpace custom(const EntireFunction& e, std::optional<QuadratureSpec> quadrature = std::nullopt) {
        // only a unimodular rotation keeps the norm; rescaling would change the space isometrically
        const cplx e0 = evaluate(e, 0.0);
        const double m0 = std::abs(e0);
        HermiteBiehlerFunction hb = m0 >= 1.0 ? normalize_gauge(e)
                                    : m0 > 0.0 ? make_hermite_biehler((std::conj(e0) / m0) * e)
                                               : make_hermite_biehler(e);
        std::optional<int> dim;
        QuadratureSpec q;
        if (const auto p = to_polynomial(hb.function()); p && !p->empty()) {
            dim = static_cast<int>(p->size()) - 1;
            q.initial_cutoff = 4.0;
            q.panel_width = 1e300;
        }
        if (quadrature) q = *quadrature;
        return DeBrangesSpace(SpaceKind::custom, std::move(hb), q, dim, 0.0);
    }

    SpaceKind kind() const noexcept { return data_->kind; }
    const HermiteBiehlerFunction& e() const noexcept { return data_->e; }
    const QuadratureSpec& quadrature() const noexcept { return data_->quadrature; }
    /// Dimension of a finite-dimensional polynomial space.
    std::optional<int> dimension() const noexcept { return data_->dimension; }
    /// Exponential type for Paley-Wiener spaces.
    double type() const noexcept { return data_->type; }

    DeBrangesSpace with_quadrature(const QuadratureSpec& q) const {
        return DeBrangesSpace(data_->kind, data_->e, q, data_->dimension, data_->type);
    }

private:
    struct Data {
        SpaceKind kind;
        HermiteBiehlerFunction e;
        QuadratureSpec quadrature;
        std::optional<int> dimension;
        double type;
    };

    DeBrangesSpace(SpaceKind kind, HermiteBiehlerFunction e, QuadratureSpec q, std::optional<int> dim, double type)
        : data_(std::make_shared<const Data>(Data{kind, std::move(e), q, dim, type})) {}

    std::shared_ptr<const Data> data_;
};

/// A function together with the space it is taken in.
struct ModelElement {
    EntireFunction function;
    DeBrangesSpace space;

    cplx operator()(cplx z) const { return evaluate(function, z); }
};

// ---------------------------------------------------------------------------
// inner product

inline IntegralResult inner_detailed(const DeBrangesSpace& space, const EntireFunction& f, const EntireFunction& g) {
    const EntireFunction& e = space.e().function();
    auto integrand = [&](double x) {
        const cplx ex = evaluate(e, x);
        return std::conj(evaluate(f, x)) * evaluate(g, x) / std::norm(ex);
    };
    return integrate_real_line(integrand, space.quadrature());
}

inline cplx inner(const DeBrangesSpace& space, const EntireFunction& f, const EntireFunction& g) {
    const IntegralResult r = inner_detailed(space, f, g);
    if (!r.converged) {
        throw InconclusiveIntegral(r.divergent ? "inner product diverges under the cutoff sweep"
                                               : "cutoff sweep did not settle within tolerance");
    }
    return r.value;
}

inline cplx inner(const ModelElement& f, const ModelElement& g) { return inner(f.space, f.function, g.function); }

inline double norm(const DeBrangesSpace& space, const EntireFunction& f) {
    return std::sqrt(std::max(0.0, inner(space, f, f).real()));
}

enum class NormStatus { finite, divergent, inconclusive };

/// Weighted-integral diagnostic for membership: a finite, settled norm is
/// evidence (not proof) that f lies in the space.
struct NormDiagnostic {
    NormStatus status = NormStatus::inconclusive;
    double norm_squared = 0.0;
    std::vector<std::pair<double, cplx>> trace;
};

inline NormDiagnostic norm_diagnostic(const DeBrangesSpace& space, const EntireFunction& f) {
    const IntegralResult r = inner_detailed(space, f, f);
    NormDiagnostic d;
    d.norm_squared = r.value.real();
    d.trace = r.trace;
    d.status = r.converged ? NormStatus::finite : (r.divergent ? NormStatus::divergent : NormStatus::inconclusive);
    return d;
}

// ---------------------------------------------------------------------------
// reproducing kernel

/// zeta -> k(zeta, w), from the closed form
///     k(z, w) = [e(z) conj e(w) - e#(z) conj e#(w)] / (2 pi i (conj w - z)).
inline EntireFunction kernel_function(const DeBrangesSpace& space, cplx w) {
    const auto& e = space.e();
    const cplx ew = evaluate(e.function(), w);
    const cplx esw = evaluate(e.sharp(), w);
    EntireFunction numerator = linear_combination({{std::conj(ew), e.function()}, {-std::conj(esw), e.sharp()}});
    EntireFunction quotient = divided_difference(std::move(numerator), std::conj(w));
    EntireFunction k = linear_combination({{-1.0 / (2.0 * pi * I), quotient}});
    return w.imag() == 0.0 ? k.with_real_flag() : k;
}

inline cplx kernel(const DeBrangesSpace& space, cplx z, cplx w) { return evaluate(kernel_function(space, w), z); }

/// Gram matrix of the monomial basis 1, z, ..., z^{N-1} of a finite-dimensional space.
inline Eigen::MatrixXcd gram_matrix(const DeBrangesSpace& space) {
    if (!space.dimension()) throw UnsupportedSpace("space has no finite basis");
    const int n = *space.dimension();
    Eigen::MatrixXcd g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            std::vector<cplx> cj(static_cast<std::size_t>(j + 1)), ck(static_cast<std::size_t>(k + 1));
            cj.back() = 1.0;
            ck.back() = 1.0;
            g(j, k) = inner(space, debranges::polynomial(cj), debranges::polynomial(ck));
            g(k, j) = std::conj(g(j, k));
        }
    }
    return g;
}

/// k(z, w) through the Gram matrix of the finite basis; independent of the closed form.
inline cplx kernel_gram(const DeBrangesSpace& space, cplx z, cplx w) {
    const Eigen::MatrixXcd g = gram_matrix(space);
    const int n = static_cast<int>(g.rows());
    Eigen::VectorXcd vz(n), vw(n);
    cplx pz = 1.0, pw = 1.0;
    for (int k = 0; k < n; ++k, pz *= z, pw *= std::conj(w)) {
        vz(k) = pz;
        vw(k) = pw;
    }
    const Eigen::LLT<Eigen::MatrixXcd> llt(g);
    if (llt.info() != Eigen::Success) throw NumericError("Gram matrix is not positive definite");
    return vz.transpose() * llt.solve(vw);
}

/// Reconstructs a Hermite-Biehler function of the space from its kernel:
///     -i sqrt(pi / (k(w0, w0) Im w0)) (z - conj w0) k(z, w0).
inline EntireFunction e_from_kernel(const DeBrangesSpace& space, cplx w0) {
    if (!(w0.imag() > 0.0)) throw ConfigurationError("w0 must lie in the open upper half-plane");
    const double kww = kernel(space, w0, w0).real();
    if (!(kww > 1e-300)) throw DegenerateKernel("k(w0, w0) vanishes");
    const cplx scale = -I * std::sqrt(pi / (kww * w0.imag()));
    return linear_combination(
        {{scale, product(debranges::polynomial({-std::conj(w0), 1.0}), kernel_function(space, w0))}});
}

// ---------------------------------------------------------------------------
// spectra of the selfadjoint extensions

struct ScanOptions {
    double points_per_unit = 64.0;
    /// Zeros are refined until |s_beta(x)| <= tolerance * |e(x)|.
    double tolerance = 1e-10;
};

/// Zeros of s_beta in [a, b]: the spectrum of the extension labelled beta.
inline ZeroSequence spectrum(const DeBrangesSpace& space, double beta, double a, double b, const ScanOptions& opt = {}) {
    if (!(a < b)) throw ConfigurationError("spectrum interval needs a < b");
    const SBeta s = s_beta(space.e(), beta);
    const EntireFunction& e = space.e().function();
    const auto n = static_cast<std::size_t>(std::ceil((b - a) * opt.points_per_unit));
    const double h = (b - a) / static_cast<double>(n);

    std::vector<double> xs(n + 1), vals(n + 1), scale(n + 1);
    double phase_total = 0.0;
    cplx prev_e{};
    for (std::size_t i = 0; i <= n; ++i) {
        xs[i] = i == n ? b : a + static_cast<double>(i) * h;
        const Jet ej = evaluate_jet(e, xs[i]);
        if (ej.value == cplx{0.0}) throw HypothesisViolation("e has a real zero inside the scan interval");
        // the phase -arg e(x) advances by beta-period pi between consecutive zeros
        if (std::abs((ej.deriv / ej.value).imag()) * h > pi / 2.0) {
            throw RefineNeeded("scan grid too coarse for the phase of e near x = " + std::to_string(xs[i]), xs[i]);
        }
        if (i > 0) phase_total += std::arg(prev_e / ej.value);
        prev_e = ej.value;
        vals[i] = evaluate(s.function, xs[i]).real();
        scale[i] = std::abs(ej.value);
    }

    std::vector<double> zeros;
    std::vector<bool> at_node(n + 1, false);
    for (std::size_t i = 0; i <= n; ++i) {
        if (std::abs(vals[i]) <= opt.tolerance * scale[i]) {
            at_node[i] = true;
            zeros.push_back(xs[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (at_node[i] || at_node[i + 1]) continue;
        if ((vals[i] < 0.0) == (vals[i + 1] < 0.0)) continue;
        double lo = xs[i], hi = xs[i + 1], flo = vals[i];
        double mid = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            mid = 0.5 * (lo + hi);
            const double fm = evaluate(s.function, mid).real();
            if (std::abs(fm) <= opt.tolerance * std::abs(evaluate(e, mid))) break;
            if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) break;
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        zeros.push_back(mid);
    }
    std::sort(zeros.begin(), zeros.end());

    // cross-check against the number of phase crossings of beta mod pi
    const double theta_a = -std::arg(evaluate(e, a));
    const double theta_b = theta_a + phase_total;
    const double eps = 1e-9;
    const double lo_count = std::ceil((theta_a - s.beta) / pi + eps);
    const double hi_count = std::floor((theta_b - s.beta) / pi - eps);
    const double lo_incl = std::ceil((theta_a - s.beta) / pi - eps);
    const double hi_incl = std::floor((theta_b - s.beta) / pi + eps);
    const double strict = std::max(0.0, hi_count - lo_count + 1.0);
    const double loose = std::max(0.0, hi_incl - lo_incl + 1.0);
    const double found = static_cast<double>(zeros.size());
    if (found < strict || found > loose) {
        throw RefineNeeded("zero count disagrees with the phase of e; refine the scan grid", a);
    }
    for (std::size_t i = 1; i < zeros.size(); ++i) {
        if (zeros[i] - zeros[i - 1] <= 2.0 * h) {
            throw RefineNeeded("suspected close zero pair near x = " + std::to_string(zeros[i]), zeros[i]);
        }
    }

    Extent extent = Extent::truncated;
    if (space.dimension()) {
        if (const auto p = to_polynomial(s.function)) {
            std::size_t degree = p->size();
            while (degree > 0 && std::abs((*p)[degree - 1]) <= 1e-12 * std::abs((*p)[0]) + 1e-300) --degree;
            if (degree > 0 && zeros.size() == degree - 1) extent = Extent::finite;
        }
    }
    return ZeroSequence(std::move(zeros), extent);
}

// ---------------------------------------------------------------------------
// resolvents, eigenfunctions, deficiency elements

/// (S_beta - w)^{-1} f, i.e. z -> [f(z) - s_beta(z) f(w) / s_beta(w)] / (z - w).
inline ModelElement resolvent(const DeBrangesSpace& space, double beta, cplx w, const EntireFunction& f) {
    const SBeta s = s_beta(space.e(), beta);
    const cplx sw = s(w);
    if (std::abs(sw) <= 1e-12 * std::abs(space.e()(w))) {
        throw SpectrumPoint("w lies in the spectrum of the extension (s_beta(w) = 0)");
    }
    const cplx fw = evaluate(f, w);
    EntireFunction numerator = linear_combination({{1.0, f}, {-fw / sw, s.function}});
    return {divided_difference(std::move(numerator), w), space};
}

inline cplx resolvent_apply(const DeBrangesSpace& space, double beta, cplx w, const EntireFunction& f, cplx z) {
    return resolvent(space, beta, w, f)(z);
}

/// g_x(z) = s_beta(z) / (z - x) for a zero x of s_beta.
inline ModelElement eigenfunction(const DeBrangesSpace& space, double beta, double x) {
    const SBeta s = s_beta(space.e(), beta);
    if (std::abs(s(x)) > 1e-8 * std::abs(space.e()(x))) {
        throw InvalidEigenvalue("x is not a zero of s_beta");
    }
    return {divided_difference(s.function, x), space};
}

/// zeta -> k(zeta, conj w): spans the kernel of S* - w.
inline ModelElement deficiency_element(const DeBrangesSpace& space, cplx w) {
    return {kernel_function(space, std::conj(w)), space};
}

/// [I + (z - v)(S_gamma - z)^{-1}] phi: carries ker(S* - v) onto ker(S* - z).
inline ModelElement cayley_transfer(const DeBrangesSpace& space, double gamma, cplx z, cplx v, const ModelElement& phi) {
    if (z == v) return phi;
    const ModelElement r = resolvent(space, gamma, z, phi.function);
    return {linear_combination({{1.0, phi.function}, {z - v, r.function}}), space};
}

/// ||u - P_d u|| / ||u|| with P_d the orthogonal projection onto span{d}.
/// The residual norm is integrated with an absolute floor of 1e-12 ||u||, so
/// values below that level are reported as an upper bound.
inline double collinearity_residual(const DeBrangesSpace& space, const EntireFunction& u, const EntireFunction& d) {
    const cplx dd = inner(space, d, d);
    const cplx du = inner(space, d, u);
    const double nu2 = inner(space, u, u).real();
    if (nu2 <= 0.0) return 0.0;
    const EntireFunction rest = linear_combination({{1.0, u}, {-du / dd, d}});
    QuadratureSpec q = space.quadrature();
    q.absolute_tolerance = 1e-24 * nu2;
    const IntegralResult r = inner_detailed(space.with_quadrature(q), rest, rest);
    if (!r.converged) throw InconclusiveIntegral("residual norm did not settle under the cutoff sweep");
    return std::sqrt(std::max(0.0, r.value.real()) + r.error) / std::sqrt(nu2);
}

/// Entire gauge family xi(z) = s_gamma(z) [I + (z - v)(S_gamma - z)^{-1}] psi_v.
///
/// The seed psi_v is the eigenfunction at the real point v of the extension
/// whose spectrum contains v (label beta_at(v)); v must not lie in the
/// spectrum of S_gamma itself, where the transform annihilates the seed.
inline ModelElement xi_gauge(const DeBrangesSpace& space, double gamma, double v, cplx z) {
    const SBeta s = s_beta(space.e(), gamma);
    const double ev = std::abs(space.e()(v));
    if (std::abs(s(v)) <= 1e-8 * ev) {
        throw InvalidSeed("seed point lies in the spectrum of S_gamma; the Cayley transform annihilates it");
    }
    const double seed_beta = beta_at(space.e(), v);
    const EntireFunction psi = eigenfunction(space, seed_beta, v).function;
    const cplx sz = s(z);
    const cplx psi_z = evaluate(psi, z);
    EntireFunction numerator = linear_combination({{sz, psi}, {-psi_z, s.function}});
    return {linear_combination({{sz, psi}, {z - v, divided_difference(std::move(numerator), z)}}), space};
}

/// (Phi f)(z) = <xi(conj z), f>.
inline cplx phi_transform(const DeBrangesSpace& space, double gamma, double v, const EntireFunction& f, cplx z) {
    return inner(space, xi_gauge(space, gamma, v, std::conj(z)).function, f);
}

// ---------------------------------------------------------------------------
// the orthogonal complement of dom(S)

struct OrthoComplement {
    double gamma = 0.0;
    ModelElement witness;
    /// Finite-basis projection residual, or 0 for a settled norm diagnostic.
    double residual = 0.0;
};

/// Relative size of the coefficients of f beyond the finite basis; infinity
/// when f is not a polynomial.
inline double finite_basis_residual(const DeBrangesSpace& space, const EntireFunction& f) {
    if (!space.dimension()) throw UnsupportedSpace("space has no finite basis");
    const auto p = to_polynomial(f);
    if (!p) return std::numeric_limits<double>::infinity();
    double inside = 0.0, outside = 0.0;
    for (std::size_t k = 0; k < p->size(); ++k) {
        if (static_cast<int>(k) < *space.dimension()) inside = std::max(inside, std::abs((*p)[k]));
        else outside = std::max(outside, std::abs((*p)[k]));
    }
    if (outside == 0.0) return 0.0;
    return outside / std::max(inside, outside);
}

/// Finds gamma with s_gamma in the space, if any. Finite-dimensional spaces
/// are decided exactly from the leading coefficient of e; otherwise a grid of
/// candidate angles is screened with the norm diagnostic.
inline std::optional<OrthoComplement> domain_orthocomplement(const DeBrangesSpace& space, int grid = 64) {
    if (space.dimension()) {
        const auto p = to_polynomial(space.e().function());
        if (!p || p->empty()) return std::nullopt;
        const double gamma = reduce_mod_pi(-std::arg(p->back()));
        const SBeta s = s_beta(space.e(), gamma);
        const double residual = finite_basis_residual(space, s.function);
        if (residual > 1e-12) return std::nullopt;
        return OrthoComplement{gamma, {s.function, space}, residual};
    }
    for (int k = 0; k < grid; ++k) {
        const double gamma = pi * k / grid;
        const SBeta s = s_beta(space.e(), gamma);
        if (norm_diagnostic(space, s.function).status == NormStatus::finite) {
            return OrthoComplement{gamma, {s.function, space}, 0.0};
        }
    }
    return std::nullopt;
}

}  // namespace debranges
