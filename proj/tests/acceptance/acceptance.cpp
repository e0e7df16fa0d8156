// Acceptance run: one line per criterion, exit status 1 if any criterion fails.
// BLOCKED marks a check that cannot hold as stated; it is reported but does not fail the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "debranges/debranges.hpp"
#include "support.hpp"

using namespace debranges;
using testing_support::Gen;
using testing_support::integers;

namespace {

constexpr double kPi = std::numbers::pi;

enum class Verdict { pass, fail, blocked };

class Outcome {
public:
    /// Records a measured quantity against its bound.
    void bound(const std::string& what, double measured, double limit) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %.2e (limit %.3g)", what.c_str(), measured, limit);
        note(buf, measured <= limit);
    }
    void require(const std::string& what, bool ok) { note(what, ok); }
    void block(const std::string& why) {
        blocked_ = true;
        parts_.push_back("BLOCKED: " + why);
    }

    Verdict verdict() const { return failed_ ? Verdict::fail : blocked_ ? Verdict::blocked : Verdict::pass; }
    std::string summary() const {
        std::string s;
        for (const auto& p : parts_) s += (s.empty() ? "" : "; ") + p;
        return s;
    }

private:
    void note(const std::string& what, bool ok) {
        if (!ok) failed_ = true;
        parts_.push_back(ok ? what : what + " [FAILED]");
    }
    std::vector<std::string> parts_;
    bool failed_ = false;
    bool blocked_ = false;
};

const DeBrangesSpace& poly2() {
    static const DeBrangesSpace s = DeBrangesSpace::polynomial(2);
    return s;
}
const DeBrangesSpace& pw() {
    static const DeBrangesSpace s = DeBrangesSpace::paley_wiener(kPi);
    return s;
}
EntireFunction one() { return constant(1.0); }
EntireFunction z_fn() { return polynomial({0.0, 1.0}); }
ZeroSequence ints(int n = 10000) { return ZeroSequence(integers(-n, n), Extent::truncated); }
ZeroSequence halves(int n = 10000) { return ZeroSequence(integers(-n, n - 1, 0.5), Extent::truncated); }
ZeroSequence fin(std::vector<double> v) { return ZeroSequence(std::move(v), Extent::finite); }

cplx sinc_kernel(cplx z, cplx w) {
    const cplx d = z - std::conj(w);
    if (std::abs(d) < 1e-12) return 1.0;
    return std::sin(kPi * d) / (kPi * d);
}

void paley_wiener_negative_control(Outcome& out) {
    const CriterionVerdict v = entire_criterion(ints(), halves());
    double c1 = 0.0;
    for (const auto& [radius, sum] : v.c1.trace) c1 = std::max(c1, std::abs(sum));
    out.require("C1 holds", v.c1.status == Status::holds);
    out.bound("C1 partial sums", c1, 1e-12);
    out.require("C2 holds", v.c2.status == Status::holds);
    out.bound("C2 limits", std::max(std::abs(v.c2.limit_positive - 1.0), std::abs(v.c2.limit_negative + 1.0)), 1e-3);
    double tail = 0.0;
    for (double t : v.c3.terms) tail = std::max(tail, std::abs(t - 1.0));
    out.require("C3 fails", v.c3.status == Status::fails && !v.c3.terms.empty());
    out.bound("C3 terms vs 1", tail, 1e-6);
    out.require("overall not-present", v.overall == Overall::not_present);
}

void polynomial_positive_control(Outcome& out) {
    const CriterionVerdict v = entire_criterion(fin({0.0}), fin({-1.0, 1.0}));
    out.require("overall entire-gauge-present", v.overall == Overall::entire_gauge_present);
    out.bound("projection residual of 1", finite_basis_residual(poly2(), one()), 1e-12);
}

void kernel_reproduction(Outcome& out) {
    Gen g(301);
    double worst = 0.0;
    for (const auto& f : {one(), z_fn()}) {
        for (int k = 0; k < 20; ++k) {
            const cplx w = g.complex(-3, 3);
            worst = std::max(worst, std::abs(inner(poly2(), kernel_function(poly2(), w), f) - evaluate(f, w)));
        }
    }
    out.bound("|<k_w,f>-f(w)|", worst, 1e-8);
    out.bound("|k(i,i)-4/pi|", std::abs(kernel(poly2(), I, I) - 4.0 / kPi), 1e-10);
}

void e_from_kernel_round_trip(Outcome& out) {
    const auto p = to_polynomial(e_from_kernel(poly2(), I));
    double coeff = std::numeric_limits<double>::infinity();
    if (p && p->size() == 3) {
        coeff = std::max({std::abs((*p)[0] - 1.0), std::abs((*p)[1] + 2.0 * I), std::abs((*p)[2] + 1.0)});
    }
    out.bound("polynomial coefficients", coeff, 1e-10);

    // the reconstruction is only determined up to the kernel it generates
    const EntireFunction rebuilt_e = e_from_kernel(pw(), I);
    const DeBrangesSpace rebuilt = DeBrangesSpace::custom(rebuilt_e, pw().quadrature());
    Gen g(304);
    double kern = 0.0;
    for (int k = 0; k < 30; ++k) {
        const cplx z = g.complex(-4, 4), w = g.complex(-4, 4);
        const cplx expected = sinc_kernel(z, w);
        kern = std::max(kern, std::abs(kernel(rebuilt, z, w) - expected) / (1 + std::abs(expected)));
    }
    out.bound("Paley-Wiener kernel of reconstruction", kern, 1e-8);

    double modulus = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = -5.0 + 10.0 * k / 99.0;
        modulus = std::max(modulus, std::abs(std::abs(evaluate(rebuilt_e, x)) - std::abs(pw().e()(x))));
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "Paley-Wiener |e_new(x)| = |e(x)| within 1e-8 is unattainable, any generator of the kernel "
                  "from k(., i) is proportional to sin(pi(z+i)); measured %.2e",
                  modulus);
    if (modulus <= 1e-8) out.bound("Paley-Wiener modulus", modulus, 1e-8);
    else out.block(buf);
}

void resolvent_correctness(Outcome& out) {
    Gen g(305);
    const ModelElement r = resolvent(poly2(), kPi / 2, 0.0, z_fn());
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) worst = std::max(worst, std::abs(r(g.complex(-3, 3)) - 1.0));
    out.bound("(S-0)^-1 z vs 1", worst, 1e-10);

    double identity = 0.0;
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        const EntireFunction f = s->dimension() ? z_fn() : kernel_function(*s, cplx(0.3, 0.5));
        const double beta = 0.7;
        const cplx w1{0.4, 1.1}, w2{-0.6, -0.9};
        const ModelElement r1 = resolvent(*s, beta, w1, f), r2 = resolvent(*s, beta, w2, f);
        const ModelElement r12 = resolvent(*s, beta, w1, r2.function);
        for (int k = 0; k < 10; ++k) {
            const cplx z = g.complex(-3, 3);
            identity = std::max(identity, std::abs(r1(z) - r2(z) - (w1 - w2) * r12(z)) / (1 + std::abs(r1(z))));
        }
    }
    out.bound("resolvent identity", identity, 1e-8);
}

void partition_and_interlacing(Outcome& out) {
    Gen g(306);
    bool unique = true;
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        const HermiteBiehlerFunction& e = s->e();
        for (int k = 0; k < 100; ++k) {
            const double x = g.real(-10, 10);
            const double beta = beta_at(e, x);
            unique = unique && beta >= 0.0 && beta < kPi && std::abs(s_beta(e, beta)(x)) <= 1e-12 * std::abs(e(x));
            for (int m = 0; m < 10; ++m) {
                double other = g.real(0.0, kPi);
                if (std::abs(other - beta) < 1e-3) other = reduce_mod_pi(other + 0.5);
                unique = unique && std::abs(s_beta(e, other)(x)) > 1e-6 * std::abs(e(x));
            }
        }
    }
    out.require("beta_at unique on 100 points per space", unique);

    bool spaces = true;
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        spaces = spaces && interlace_check(spectrum(*s, 0.0, -6, 6), spectrum(*s, kPi / 2, -6, 6)).interlaced;
    }
    out.require("s_0 / s_pi/2 interlace in both spaces", spaces);

    const double taus[] = {-3.0, -0.5, 0.0, 0.7, 2.0, std::numeric_limits<double>::infinity()};
    int pairs = 0, good = 0;
    for (int n : {2, 3, 5, 8, 16, 33, 64}) {
        std::vector<double> b, q;
        for (int k = 0; k < n; ++k) {
            b.push_back(1.0 + 0.02 * g.real(-0.5, 1.0));
            q.push_back(0.02 * g.real(-1.0, 1.0));
        }
        const JacobiMatrix mats[] = {JacobiMatrix(SequenceRule::constant(1.0), SequenceRule::constant(0.0), n),
                                     JacobiMatrix(SequenceRule::list(b), SequenceRule::list(q), n)};
        for (const auto& j : mats) {
            std::vector<ZeroSequence> s;
            for (double t : taus) s.push_back(truncated_extension_spectra(j, n, t));
            for (std::size_t a = 0; a < s.size(); ++a) {
                for (std::size_t c = a + 1; c < s.size(); ++c, ++pairs) good += interlace_check(s[a], s[c]).interlaced;
            }
        }
    }
    out.require("Jacobi tau pairs interlace " + std::to_string(good) + "/" + std::to_string(pairs), good == pairs);
}

void model_identities(Outcome& out) {
    Gen g(307);
    double intertwine = 0.0, pre_j = 0.0, xi_sym = 0.0;
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        const EntireFunction f = s->dimension() ? z_fn() : kernel_function(*s, cplx(-0.8, -0.2));
        for (int k = 0; k < 3; ++k) {
            const double beta = g.real(0, kPi);
            const cplx w = g.upper(2, 0.2, 2);
            const EntireFunction sr = sharp(resolvent(*s, beta, w, f).function);
            const ModelElement rs = resolvent(*s, beta, std::conj(w), sharp(f));
            for (int m = 0; m < 5; ++m) {
                const cplx z = g.complex(-3, 3);
                intertwine = std::max(intertwine, std::abs(evaluate(sr, z) - rs(z)) / (1 + std::abs(rs(z))));
            }
        }

        const cplx v0{0.1, 0.8};
        const ModelElement seed = deficiency_element(*s, v0);
        auto psi = [&](cplx z) { return cayley_transfer(*s, kPi / 2, z, v0, seed).function; };
        for (int k = 0; k < 2; ++k) {
            const cplx z = g.upper(2, 0.3, 1.5), v = std::conj(g.upper(2, 0.3, 1.5));
            const cplx lhs = inner(*s, psi(std::conj(z)), psi(std::conj(v)));
            pre_j = std::max(pre_j, std::abs(lhs - inner(*s, psi(v), psi(z))) / (1 + std::abs(lhs)));
        }

        for (int k = 0; k < 20; ++k) {
            const cplx z = g.complex(-2, 2), t = g.complex(-2, 2);
            const EntireFunction a = sharp(xi_gauge(*s, kPi / 2, 0.0, z).function);
            const ModelElement b = xi_gauge(*s, kPi / 2, 0.0, std::conj(z));
            xi_sym = std::max(xi_sym, std::abs(evaluate(a, t) - b(t)) / (1 + std::abs(b(t))));
        }
    }
    out.bound("sharp intertwines resolvents", intertwine, 1e-8);

    const double collinear = std::max(
        collinearity_residual(poly2(), cayley_transfer(poly2(), kPi / 2, 2.0 * I, I, deficiency_element(poly2(), I)).function,
                              deficiency_element(poly2(), 2.0 * I).function),
        collinearity_residual(pw(), cayley_transfer(pw(), kPi / 2, cplx(0.5, 1.0), I, deficiency_element(pw(), I)).function,
                              deficiency_element(pw(), cplx(0.5, 1.0)).function));
    out.bound("Cayley collinearity", collinear, 1e-8);
    out.bound("pre-J symmetry", pre_j, 1e-8);
    out.bound("xi conjugation symmetry", xi_sym, 1e-10);

    const EntireFunction fs[] = {one(), z_fn(), polynomial({I, 2.0})};
    double spread = 0.0, imag = 0.0, smallest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 8; ++k) {
        const cplx z = k < 4 ? cplx(g.real(-2, 2), 0.0) : g.complex(-2, 2);
        cplx ratio0{};
        for (std::size_t m = 0; m < 3; ++m) {
            const cplx ratio =
                phi_transform(poly2(), kPi / 2, 0.0, fs[m], z) / phi_transform(poly2(), kPi / 4, 0.5, fs[m], z);
            if (m == 0) ratio0 = ratio;
            spread = std::max(spread, std::abs(ratio - ratio0) / std::abs(ratio0));
            smallest = std::min(smallest, std::abs(ratio));
            if (z.imag() == 0.0) imag = std::max(imag, std::abs(ratio.imag()) / std::abs(ratio));
        }
    }
    out.bound("ratio f-independence", spread, 1e-8);
    out.bound("ratio imaginary part on the line", imag, 1e-8);
    out.require("ratio zero-free on samples", smallest > 1e-8);
}

void jacobi_invariants(Outcome& out) {
    Gen g(308);
    const int n = 1000;
    std::vector<double> b, q;
    for (int k = 0; k < n; ++k) {
        b.push_back(g.real(0.5, 2.0));
        q.push_back(g.real(-1.0, 1.0));
    }
    const JacobiMatrix free(SequenceRule::constant(1.0), SequenceRule::constant(0.0), n);
    const JacobiMatrix geometric(SequenceRule::geometric(2.0), SequenceRule::constant(0.0), n);
    const JacobiMatrix random(SequenceRule::list(b), SequenceRule::list(q), n);
    double wronskian = 0.0;
    for (const JacobiMatrix* j : {&free, &geometric, &random}) {
        for (int i = 0; i < 20; ++i) wronskian = std::max(wronskian, wronskian_deviation(*j, recurrence_eval(*j, g.complex(-2, 2), n)));
    }
    out.bound("Wronskian deviation to N=1000", wronskian, 1e-9);

    const std::vector<cplx> zs = g.complexes(20, -5, 5);
    const double gauge = gauge_identity_check(geometric, zs);
    out.require("delta_2 coefficient deviation " + std::to_string(gauge), gauge == 0.0);

    const std::vector<int> sweep{8, 16, 32, 64, 128, 256, 512, 1000};
    out.require("b_k=2^k bounded", limit_circle_diagnostic(geometric, I, sweep).status == CircleStatus::bounded);
    out.require("b_k=1 divergent", limit_circle_diagnostic(free, I, sweep).status == CircleStatus::divergent);
}

void canonical_products(Outcome& out) {
    Gen g(309);
    const ZeroSequence zi = ints(), zh = halves();
    double values = 0.0;
    bool converged = true;
    for (int k = 0; k < 50; ++k) {
        const cplx z{g.real(-10, 10), g.real(-1, 1)};
        const ProductEstimate s = canonical_product(zi, z), c = canonical_product(zh, z);
        converged = converged && s.converged && c.converged;
        values = std::max({values, std::abs(s.value - std::sin(kPi * z) / kPi), std::abs(c.value - std::cos(kPi * z))});
    }
    out.require("products converged", converged);
    out.bound("sin/cos closed forms", values, 1e-6);

    double deriv = 0.0;
    for (int n = -12; n <= 12; ++n) {
        deriv = std::max(deriv, std::abs(product_derivative_at_zero(zi, n).value - std::cos(kPi * n)));
        const double x = n + 0.5;
        deriv = std::max(deriv, std::abs(product_derivative_at_zero(zh, x).value + kPi * std::sin(kPi * x)));
    }
    out.bound("derivatives at zeros", deriv, 1e-6);
}

struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
    double time_limit;  // seconds, infinite when unconstrained
};

}  // namespace

int main() {
    constexpr double unlimited = std::numeric_limits<double>::infinity();
    const Criterion criteria[] = {
        {"Paley-Wiener negative control", paley_wiener_negative_control, 10.0},
        {"polynomial-space positive control", polynomial_positive_control, 1.0},
        {"kernel reproduction", kernel_reproduction, unlimited},
        {"e_from_kernel round trip", e_from_kernel_round_trip, unlimited},
        {"resolvent correctness", resolvent_correctness, unlimited},
        {"partition and interlacing", partition_and_interlacing, unlimited},
        {"model identities", model_identities, unlimited},
        {"Jacobi invariants", jacobi_invariants, 5.0},
        {"canonical products", canonical_products, unlimited},
    };

    int failures = 0, index = 0;
    for (const auto& c : criteria) {
        ++index;
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.require(std::string("unexpected error: ") + e.what(), false);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (std::isfinite(c.time_limit)) out.bound("runtime s", seconds, c.time_limit);

        const Verdict v = out.verdict();
        const char* label = v == Verdict::pass ? "PASS" : v == Verdict::fail ? "FAIL" : "BLOCKED";
        if (v == Verdict::fail) ++failures;
        std::printf("[%s] %d %s (%.2fs): %s\n", label, index, c.name, seconds, out.summary().c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
