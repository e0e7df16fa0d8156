#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace debranges {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Value and first derivative of an analytic function at a point.
struct Jet {
    cplx value{};
    cplx deriv{};

    friend Jet operator+(const Jet& a, const Jet& b) { return {a.value + b.value, a.deriv + b.deriv}; }
    friend Jet operator-(const Jet& a, const Jet& b) { return {a.value - b.value, a.deriv - b.deriv}; }
    friend Jet operator*(const Jet& a, const Jet& b) {
        return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
    }
    friend Jet operator*(cplx c, const Jet& a) { return {c * a.value, c * a.deriv}; }
    Jet& operator+=(const Jet& o) { value += o.value; deriv += o.deriv; return *this; }
    Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Reduces an angle into [0, pi).
inline double reduce_mod_pi(double angle) {
    double r = std::fmod(angle, pi);
    if (r < 0) r += pi;
    if (r >= pi) r -= pi;
    return r;
}

}  // namespace debranges
