#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "debranges/space.hpp"
#include "support.hpp"

using namespace debranges;
using testing_support::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

const DeBrangesSpace& poly2() {
    static const DeBrangesSpace s = DeBrangesSpace::polynomial(2);
    return s;
}
const DeBrangesSpace& pw() {
    static const DeBrangesSpace s = DeBrangesSpace::paley_wiener(kPi);
    return s;
}

EntireFunction z_fn() { return polynomial({0.0, 1.0}); }
EntireFunction one() { return constant(1.0); }

cplx sinc_kernel(cplx z, cplx w) {
    const cplx d = z - std::conj(w);
    if (std::abs(d) < 1e-12) return 1.0;
    return std::sin(kPi * d) / (kPi * d);
}

}  // namespace

// construction

TEST(Space, BuiltinsAreNormalized) {
    EXPECT_LT(std::abs(poly2().e()(0.0) - cplx(1.0)), 1e-15);
    EXPECT_LT(std::abs(poly2().e()(2.0) - (-(cplx(2.0) + I) * (cplx(2.0) + I))), 1e-13);
    EXPECT_EQ(poly2().dimension(), 2);
    EXPECT_FALSE(pw().dimension());
    EXPECT_THROW(DeBrangesSpace::paley_wiener(-1.0), ConfigurationError);
    EXPECT_THROW(DeBrangesSpace::polynomial(0), ConfigurationError);
}

TEST(Space, CustomPolynomialGetsDimension) {
    const DeBrangesSpace s = DeBrangesSpace::custom(polynomial({I, 1.0}));  // z + i, dimension 1
    EXPECT_EQ(s.dimension(), 1);
    EXPECT_THROW(DeBrangesSpace::custom(constant(1.0)), HypothesisViolation);
}

// inner products

TEST(Inner, PolynomialSpaceValues) {
    EXPECT_NEAR(inner(poly2(), one(), one()).real(), kPi / 2, 1e-9);
    EXPECT_NEAR(std::abs(inner(poly2(), one(), z_fn())), 0.0, 1e-9);
    EXPECT_NEAR(inner(poly2(), z_fn(), z_fn()).real(), kPi / 2, 1e-9);
}

TEST(Inner, AntilinearInFirstArgument) {
    const cplx a{0.3, 1.2};
    const cplx lhs = inner(poly2(), a * one(), one());
    EXPECT_LT(std::abs(lhs - std::conj(a) * (kPi / 2)), 1e-9);
}

TEST(Inner, DivergentIntegralIsInconclusive) {
    EXPECT_THROW(inner(pw(), one(), one()), InconclusiveIntegral);
    const NormDiagnostic d = norm_diagnostic(pw(), one());
    EXPECT_EQ(d.status, NormStatus::divergent);
    EXPECT_FALSE(d.trace.empty());
}

TEST(InnerProperty, ConjugateSymmetric) {
    Gen g(5);
    for (int k = 0; k < 5; ++k) {
        const EntireFunction f = kernel_function(pw(), g.upper(2, 0.1, 1.5));
        const EntireFunction h = kernel_function(pw(), g.complex(-2, 2));
        EXPECT_LT(std::abs(inner(pw(), f, h) - std::conj(inner(pw(), h, f))), 1e-8);
    }
}

// kernel

TEST(Kernel, PolynomialClosedForm) {
    EXPECT_NEAR(kernel(poly2(), I, I).real(), 4.0 / kPi, 1e-10);
    Gen g(9);
    for (int k = 0; k < 20; ++k) {
        const cplx z = g.complex(-3, 3), w = g.complex(-3, 3);
        const cplx expected = 2.0 / kPi * (1.0 + z * std::conj(w));
        EXPECT_LT(std::abs(kernel(poly2(), z, w) - expected), 1e-10 * (1 + std::abs(expected)));
        EXPECT_LT(std::abs(kernel_gram(poly2(), z, w) - expected), 1e-8 * (1 + std::abs(expected)));
    }
}

TEST(Kernel, PaleyWienerSinc) {
    for (double x : {0.0, 0.5, 1.0, -2.3}) EXPECT_NEAR(kernel(pw(), x, x).real(), 1.0, 1e-12);
    Gen g(10);
    for (int k = 0; k < 20; ++k) {
        const cplx z = g.complex(-3, 3), w = g.complex(-3, 3);
        const cplx expected = sinc_kernel(z, w);
        EXPECT_LT(std::abs(kernel(pw(), z, w) - expected), 1e-10 * (1 + std::abs(expected)));
    }
}

TEST(Kernel, GramRouteNeedsFiniteBasis) { EXPECT_THROW(gram_matrix(pw()), UnsupportedSpace); }

TEST(Kernel, ReproducesInPaleyWiener) {
    const EntireFunction f = kernel_function(pw(), cplx(0.4, 0.3));
    Gen g(12);
    for (int k = 0; k < 4; ++k) {
        const cplx w = g.complex(-2, 2);
        const cplx lhs = inner(pw(), kernel_function(pw(), w), f);
        EXPECT_LT(std::abs(lhs - evaluate(f, w)), 1e-8);
    }
}

TEST(KernelProperty, HermitianConjugationPositivity) {
    Gen g(13);
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        for (int k = 0; k < 30; ++k) {
            const cplx z = g.complex(-4, 4), w = g.complex(-4, 4);
            const cplx kzw = kernel(*s, z, w);
            const double scale = 1 + std::abs(kzw);
            EXPECT_LT(std::abs(kzw - std::conj(kernel(*s, w, z))), 1e-10 * scale);
            EXPECT_LT(std::abs(kernel(*s, std::conj(z), std::conj(w)) - std::conj(kzw)), 1e-10 * scale);
            const cplx kww = kernel(*s, w, w);
            EXPECT_GE(kww.real(), 0.0);
            EXPECT_LT(std::abs(kww.imag()), 1e-10 * (1 + kww.real()));
        }
    }
}

// e_from_kernel

TEST(EFromKernel, PolynomialRoundTrip) {
    const auto p = to_polynomial(e_from_kernel(poly2(), I));
    ASSERT_TRUE(p);
    ASSERT_EQ(p->size(), 3u);
    EXPECT_LT(std::abs((*p)[0] - cplx(1.0)), 1e-10);
    EXPECT_LT(std::abs((*p)[1] + 2.0 * I), 1e-10);
    EXPECT_LT(std::abs((*p)[2] + 1.0), 1e-10);
}

TEST(EFromKernel, PaleyWienerGeneratesSameKernel) {
    // e is not unique: the reconstruction differs from e^{-i pi z} on the line but
    // must produce the same reproducing kernel
    const DeBrangesSpace rebuilt = DeBrangesSpace::custom(e_from_kernel(pw(), I), pw().quadrature());
    Gen g(26);
    for (int k = 0; k < 30; ++k) {
        const cplx z = g.complex(-4, 4), w = g.complex(-4, 4);
        const cplx expected = sinc_kernel(z, w);
        EXPECT_LT(std::abs(kernel(rebuilt, z, w) - expected), 1e-8 * (1 + std::abs(expected)));
    }
}

TEST(EFromKernel, PaleyWienerModulusDiffersFromExponential) {
    // |sin(pi (x + i))| is not constant, so |e_new| / |e| oscillates by about 2 exp(-2 pi)
    const EntireFunction e = e_from_kernel(pw(), I);
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = -5.0 + 10.0 * k / 99.0;
        const double r = std::abs(evaluate(e, x));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    EXPECT_NEAR(hi - lo, 2.0 * std::exp(-2 * kPi) * hi, 1e-4);
}

TEST(EFromKernel, NoZerosInUpperHalfPlane) {
    Gen g(14);
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        const EntireFunction e = e_from_kernel(*s, cplx(0.2, 0.7));
        for (int k = 0; k < 30; ++k) EXPECT_GT(std::abs(evaluate(e, g.upper(4, 0.05, 3))), 1e-8);
    }
}

TEST(EFromKernel, RejectsLowerHalfPlane) { EXPECT_THROW(e_from_kernel(poly2(), -I), ConfigurationError); }

// spectra

TEST(Spectrum, PaleyWienerIntegers) {
    const ZeroSequence z = spectrum(pw(), 0.0, -2.5, 2.5);
    ASSERT_EQ(z.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(z.values()[k], -2.0 + k, 1e-9);
    EXPECT_FALSE(z.is_finite());
}

TEST(Spectrum, PaleyWienerHalfIntegersClosedInterval) {
    const ZeroSequence z = spectrum(pw(), kPi / 2, -2.5, 2.5);
    ASSERT_EQ(z.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(z.values()[k], -2.5 + k, 1e-9);
}

TEST(Spectrum, PolynomialSpace) {
    const ZeroSequence a = spectrum(poly2(), kPi / 2, -5, 5);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_NEAR(a.values()[0], -1.0, 1e-10);
    EXPECT_NEAR(a.values()[1], 1.0, 1e-10);
    EXPECT_TRUE(a.is_finite());
    const ZeroSequence b = spectrum(poly2(), 0.0, -5, 5);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_NEAR(b.values()[0], 0.0, 1e-12);
}

TEST(Spectrum, CoarseGridAsksForRefinement) {
    const DeBrangesSpace fast = DeBrangesSpace::paley_wiener(200.0);
    EXPECT_THROW(spectrum(fast, 0.0, -1, 1, ScanOptions{4.0, 1e-10}), RefineNeeded);
    EXPECT_THROW(spectrum(pw(), 0.0, 1, -1), ConfigurationError);
}

TEST(SpectrumProperty, ZerosOfSBetaAndInterlacing) {
    Gen g(15);
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        for (int k = 0; k < 5; ++k) {
            const double beta = g.real(0, kPi);
            const ZeroSequence z = spectrum(*s, beta, -6, 6);
            for (double x : z.values()) EXPECT_LT(std::abs(s_beta(s->e(), beta)(x)), 1e-9 * std::abs(s->e()(x)));
        }
        const ZeroSequence a = spectrum(*s, 0.0, -6, 6), b = spectrum(*s, kPi / 2, -6, 6);
        EXPECT_TRUE(interlace_check(a, b).interlaced);
    }
}

// resolvents

TEST(Resolvent, PolynomialSpaceMapsZToOne) {
    const ModelElement r = resolvent(poly2(), kPi / 2, 0.0, z_fn());
    Gen g(16);
    for (int k = 0; k < 20; ++k) EXPECT_LT(std::abs(r(g.complex(-3, 3)) - cplx(1.0)), 1e-10);
}

TEST(Resolvent, ZeroFunction) {
    EXPECT_EQ(resolvent_apply(pw(), 0.3, I, EntireFunction{}, cplx(0.2, 0.1)), cplx(0.0));
}

TEST(Resolvent, SpectrumPointRejected) { EXPECT_THROW(resolvent(pw(), 0.0, 0.0, one()), SpectrumPoint); }

TEST(Resolvent, IdentityInPaleyWiener) {
    const EntireFunction f = kernel_function(pw(), I);
    const cplx w1 = I, w2 = 2.0 * I;
    const ModelElement r1 = resolvent(pw(), 0.0, w1, f);
    const ModelElement r2 = resolvent(pw(), 0.0, w2, f);
    const ModelElement r12 = resolvent(pw(), 0.0, w1, r2.function);
    Gen g(17);
    for (int k = 0; k < 10; ++k) {
        const cplx z = g.complex(-3, 3);
        EXPECT_LT(std::abs(r1(z) - r2(z) - (w1 - w2) * r12(z)), 1e-8);
    }
}

TEST(ResolventProperty, IdentityAndSharpIntertwining) {
    Gen g(18);
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        const EntireFunction basis[] = {s->dimension() ? one() : kernel_function(*s, cplx(0.3, 0.5)),
                                        s->dimension() ? z_fn() : kernel_function(*s, cplx(-0.8, -0.2))};
        for (const auto& f : basis) {
            for (int k = 0; k < 5; ++k) {
                const double beta = g.real(0, kPi);
                const cplx w1 = g.upper(2, 0.2, 2), w2 = std::conj(g.upper(2, 0.2, 2));
                const ModelElement r1 = resolvent(*s, beta, w1, f), r2 = resolvent(*s, beta, w2, f);
                const ModelElement r12 = resolvent(*s, beta, w1, r2.function);
                const ModelElement rs = resolvent(*s, beta, std::conj(w1), sharp(f));
                const EntireFunction sr = sharp(r1.function);
                for (int m = 0; m < 5; ++m) {
                    const cplx z = g.complex(-3, 3);
                    EXPECT_LT(std::abs(r1(z) - r2(z) - (w1 - w2) * r12(z)), 1e-8 * (1 + std::abs(r1(z))));
                    EXPECT_LT(std::abs(evaluate(sr, z) - rs(z)), 1e-8 * (1 + std::abs(rs(z))));
                }
            }
        }
    }
}

// eigenfunctions

TEST(Eigenfunction, PolynomialSpace) {
    const auto p = to_polynomial(eigenfunction(poly2(), kPi / 2, 1.0).function);
    ASSERT_TRUE(p);
    EXPECT_LT(std::abs((*p)[0] - cplx(1.0)), 1e-12);
    EXPECT_LT(std::abs((*p)[1] - cplx(1.0)), 1e-12);
    const auto q = to_polynomial(eigenfunction(poly2(), kPi / 2, -1.0).function);
    ASSERT_TRUE(q);
    EXPECT_LT(std::abs((*q)[0] + 1.0), 1e-12);
    EXPECT_LT(std::abs((*q)[1] - cplx(1.0)), 1e-12);
}

TEST(Eigenfunction, PaleyWienerAtOrigin) {
    const ModelElement g0 = eigenfunction(pw(), 0.0, 0.0);
    EXPECT_NEAR(g0(0.0).real(), kPi, 1e-10);
    EXPECT_NEAR(g0(0.5).real(), 2.0, 1e-12);
}

TEST(Eigenfunction, NonZeroRejected) { EXPECT_THROW(eigenfunction(pw(), 0.0, 0.5), InvalidEigenvalue); }

TEST(EigenfunctionProperty, DistinctZerosOrthogonal) {
    for (double a : {-2.0, 0.0, 1.0}) {
        for (double b : {-1.0, 2.0}) {
            const cplx ip = inner(pw(), eigenfunction(pw(), 0.0, a).function, eigenfunction(pw(), 0.0, b).function);
            EXPECT_LT(std::abs(ip), 1e-8);
        }
    }
    const cplx ip = inner(poly2(), eigenfunction(poly2(), kPi / 2, 1.0).function,
                          eigenfunction(poly2(), kPi / 2, -1.0).function);
    EXPECT_LT(std::abs(ip), 1e-8);
}

// deficiency elements and the Cayley transform

TEST(Deficiency, PolynomialSpaceAtOrigin) {
    const ModelElement d = deficiency_element(poly2(), 0.0);
    for (cplx z : {cplx(0.0), cplx(1.5, -2.0)}) EXPECT_LT(std::abs(d(z) - 2.0 / kPi), 1e-12);
    EXPECT_LT(std::abs(inner(poly2(), d.function, z_fn())), 1e-9);
}

TEST(Deficiency, SharpMatchesConjugatePoint) {
    Gen g(19);
    for (int k = 0; k < 10; ++k) {
        const cplx w = g.complex(-2, 2);
        const EntireFunction a = sharp(deficiency_element(pw(), w).function);
        const ModelElement b = deficiency_element(pw(), std::conj(w));
        const cplx z = g.complex(-2, 2);
        EXPECT_LT(std::abs(evaluate(a, z) - b(z)), 1e-12 * (1 + std::abs(b(z))));
    }
}

TEST(Cayley, IdentityAtCoincidentPoints) {
    const ModelElement phi = deficiency_element(poly2(), I);
    const ModelElement out = cayley_transfer(poly2(), kPi / 2, I, I, phi);
    EXPECT_EQ(out(0.7), phi(0.7));
}

TEST(Cayley, CollinearWithTargetDeficiency) {
    const ModelElement phi = deficiency_element(poly2(), I);
    const ModelElement out = cayley_transfer(poly2(), kPi / 2, 2.0 * I, I, phi);
    EXPECT_LT(collinearity_residual(poly2(), out.function, kernel_function(poly2(), -2.0 * I)), 1e-8);
    const ModelElement pwout = cayley_transfer(pw(), kPi / 2, cplx(0.5, 1.0), I, deficiency_element(pw(), I));
    EXPECT_LT(collinearity_residual(pw(), pwout.function, deficiency_element(pw(), cplx(0.5, 1.0)).function), 1e-8);
}

TEST(Cayley, RoundTripIsIdentity) {
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        const cplx v = I, z{0.4, 1.7};
        const ModelElement phi = deficiency_element(*s, v);
        const ModelElement there = cayley_transfer(*s, kPi / 2, z, v, phi);
        const ModelElement back = cayley_transfer(*s, kPi / 2, v, z, there);
        Gen g(20);
        for (int k = 0; k < 10; ++k) {
            const cplx t = g.complex(-2, 2);
            EXPECT_LT(std::abs(back(t) - phi(t)), 1e-8 * (1 + std::abs(phi(t))));
        }
    }
}

TEST(CayleyProperty, PreJSymmetry) {
    Gen g(22);
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        const double gamma = kPi / 2;
        const cplx v0{0.1, 0.8};
        const ModelElement seed = deficiency_element(*s, v0);
        auto psi = [&](cplx z) { return cayley_transfer(*s, gamma, z, v0, seed).function; };
        for (int k = 0; k < 4; ++k) {
            const cplx z = g.upper(2, 0.3, 1.5), v = std::conj(g.upper(2, 0.3, 1.5));
            const cplx lhs = inner(*s, psi(std::conj(z)), psi(std::conj(v)));
            const cplx rhs = inner(*s, psi(v), psi(z));
            EXPECT_LT(std::abs(lhs - rhs), 1e-8 * (1 + std::abs(lhs)));
        }
    }
}

// xi gauge

TEST(XiGauge, SeedInSpectrumRejected) { EXPECT_THROW(xi_gauge(pw(), kPi / 2, 0.5, I), InvalidSeed); }

TEST(XiGauge, AtSeedPointCollinearWithSeed) {
    const double gamma = kPi / 2, v = 0.0;
    const ModelElement xi = xi_gauge(poly2(), gamma, v, v);
    const EntireFunction psi = eigenfunction(poly2(), beta_at(poly2().e(), v), v).function;
    EXPECT_LT(collinearity_residual(poly2(), xi.function, psi), 1e-8);
}

TEST(XiGaugeProperty, ConjugationSymmetry) {
    Gen g(23);
    for (const DeBrangesSpace* s : {&poly2(), &pw()}) {
        for (int k = 0; k < 20; ++k) {
            const cplx z = g.complex(-2, 2);
            const EntireFunction a = sharp(xi_gauge(*s, kPi / 2, 0.0, z).function);
            const ModelElement b = xi_gauge(*s, kPi / 2, 0.0, std::conj(z));
            const cplx t = g.complex(-2, 2);
            EXPECT_LT(std::abs(evaluate(a, t) - b(t)), 1e-10 * (1 + std::abs(b(t))));
        }
    }
}

TEST(XiGaugeProperty, RatioIndependentOfFunction) {
    // two parametrizations differ by a zero-free real entire factor
    const DeBrangesSpace& s = poly2();
    const EntireFunction fs[] = {one(), z_fn(), polynomial({I, 2.0})};
    Gen g(24);
    for (int k = 0; k < 8; ++k) {
        const cplx z = k < 4 ? cplx(g.real(-2, 2), 0.0) : g.complex(-2, 2);
        cplx ratio0{};
        for (std::size_t m = 0; m < 3; ++m) {
            const cplx a = phi_transform(s, kPi / 2, 0.0, fs[m], z);
            const cplx b = phi_transform(s, kPi / 4, 0.5, fs[m], z);
            ASSERT_GT(std::abs(b), 1e-10);
            const cplx ratio = a / b;
            if (m == 0) ratio0 = ratio;
            EXPECT_LT(std::abs(ratio - ratio0), 1e-8 * std::abs(ratio0));
            EXPECT_GT(std::abs(ratio), 1e-8);
            if (z.imag() == 0.0) {
                EXPECT_LT(std::abs(ratio.imag()), 1e-8 * std::abs(ratio));
            }
        }
    }
}

// interlacing and sequences

TEST(Interlace, Examples) {
    EXPECT_TRUE(interlace_check(ZeroSequence(testing_support::integers(-50, 50), Extent::truncated),
                                ZeroSequence(testing_support::integers(-50, 49, 0.5), Extent::truncated))
                    .interlaced);
    EXPECT_TRUE(interlace_check(ZeroSequence({0.0}, Extent::finite), ZeroSequence({-1.0, 1.0}, Extent::finite)).interlaced);
    const InterlaceResult r = interlace_check(ZeroSequence({0.0, 1.0}, Extent::finite), ZeroSequence({2.0, 3.0}, Extent::finite));
    EXPECT_FALSE(r.interlaced);
    ASSERT_TRUE(r.violation);
    EXPECT_EQ(r.violation->first, 0.0);
    EXPECT_EQ(r.violation->second, 1.0);
    EXPECT_TRUE(interlace_check(ZeroSequence{}, ZeroSequence({1.0}, Extent::finite)).inconclusive);
}

TEST(ZeroSequenceTest, ViewsPartitionValues) {
    const ZeroSequence z({3.0, -1.0, 1e-14, -4.0, 2.0}, Extent::finite);
    EXPECT_TRUE(z.has_origin());
    EXPECT_EQ(z.positive(), (std::vector<double>{2.0, 3.0}));
    EXPECT_EQ(z.negative(), (std::vector<double>{-1.0, -4.0}));
    EXPECT_EQ(z.by_modulus(), (std::vector<double>{-1.0, 2.0, 3.0, -4.0}));
    EXPECT_EQ(z.values()[2], 0.0);
    EXPECT_THROW(ZeroSequence({1.0, 1.0}, Extent::finite), ConfigurationError);
    EXPECT_THROW(ZeroSequence({0.0, 1e-14}, Extent::finite), ConfigurationError);
    EXPECT_THROW(ZeroSequence({NAN}, Extent::finite), ConfigurationError);
}

// orthogonal complement of the domain

TEST(OrthoComplement, PolynomialSpace) {
    const auto oc = domain_orthocomplement(poly2());
    ASSERT_TRUE(oc);
    EXPECT_NEAR(oc->gamma, 0.0, 1e-12);
    const auto p = to_polynomial(oc->witness.function);
    ASSERT_TRUE(p);
    EXPECT_LT(std::abs((*p)[0]), 1e-12);
    EXPECT_LT(std::abs((*p)[1] - cplx(2.0)), 1e-12);
    // orthogonal to the domain {f : z f in the space} = constants
    EXPECT_LT(std::abs(inner(poly2(), oc->witness.function, one())), 1e-9);
}

TEST(OrthoComplement, PaleyWienerHasNone) { EXPECT_FALSE(domain_orthocomplement(pw())); }

// (A2) and (A3) isometries

TEST(SpaceProperty, AxiomIsometries) {
    const DeBrangesSpace s = DeBrangesSpace::polynomial(3);
    Gen g(25);
    for (int k = 0; k < 5; ++k) {
        const cplx w = g.upper(2, 0.3, 2);
        // f vanishes at w; f (z - conj w)/(z - w) = (z - conj w)(a + b z)
        const cplx a = g.complex(-1, 1), b = g.complex(-1, 1);
        const EntireFunction f = polynomial({-w * a, a - w * b, b});
        const EntireFunction t = polynomial({-std::conj(w) * a, a - std::conj(w) * b, b});
        EXPECT_NEAR(norm(s, f), norm(s, t), 1e-8 * norm(s, f));
        EXPECT_NEAR(norm(s, sharp(f)), norm(s, f), 1e-8 * norm(s, f));
    }
}
