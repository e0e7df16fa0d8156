#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "debranges/extrapolation.hpp"
#include "debranges/types.hpp"

namespace debranges {

/// Integration over the real line by a cutoff sweep: [-R, R] with R doubling,
/// adaptive Gauss-Kronrod on panels, and extrapolation of the sweep in 1/R.
struct QuadratureSpec {
    double initial_cutoff = 8.0;
    int max_doublings = 14;
    /// Panels never exceed this width; choose below half the shortest oscillation period.
    double panel_width = 0.5;
    /// Relative tolerance for two successive extrapolated values.
    double tolerance = 1e-8;
    int extrapolation_levels = 5;
    /// Absolute floor for the agreement test; lets integrals of near-zero functions settle.
    double absolute_tolerance = 0.0;
};

struct IntegralResult {
    cplx value{};
    double error = 0.0;
    /// Integral of |integrand| over the last cutoff.
    double l1 = 0.0;
    bool converged = false;
    /// The L1 mass keeps growing at least logarithmically with the cutoff.
    bool divergent = false;
    /// (cutoff, raw integral) per sweep level.
    std::vector<std::pair<double, cplx>> trace;
};

namespace detail {

    // Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
    inline constexpr std::array<double, 8> gk_x = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
    inline constexpr std::array<double, 8> gk_wk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                                    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                                    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                                    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    inline constexpr std::array<double, 4> gk_wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    struct PanelResult {
        cplx value;
        double abs_value;
        double error;
    };

    template <class F>
    PanelResult gauss_kronrod(F& f, double a, double b) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        const cplx fc = f(c);
        cplx k = gk_wk[7] * fc, g = gk_wg[3] * fc;
        double absk = gk_wk[7] * std::abs(fc);
        for (int i = 0; i < 7; ++i) {
            const cplx f1 = f(c - h * gk_x[i]);
            const cplx f2 = f(c + h * gk_x[i]);
            k += gk_wk[i] * (f1 + f2);
            absk += gk_wk[i] * (std::abs(f1) + std::abs(f2));
            if (i % 2 == 1) g += gk_wg[i / 2] * (f1 + f2);
        }
        return {k * h, absk * std::abs(h), std::abs((k - g) * h)};
    }

    template <class F>
    PanelResult adaptive(F& f, double a, double b, double rel_tol, double abs_density, int depth) {
        const PanelResult whole = gauss_kronrod(f, a, b);
        const double allowed = std::max({rel_tol * whole.abs_value, abs_density * (b - a), 1e-300});
        if (depth <= 0 || whole.error <= allowed) return whole;
        const double m = 0.5 * (a + b);
        const PanelResult l = adaptive(f, a, m, rel_tol, abs_density, depth - 1);
        const PanelResult r = adaptive(f, m, b, rel_tol, abs_density, depth - 1);
        return {l.value + r.value, l.abs_value + r.abs_value, l.error + r.error};
    }

    template <class F>
    PanelResult integrate_span(F& f, double a, double b, double panel_width, double abs_density = 0.0) {
        const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width - 1e-9)));
        const double w = (b - a) / panels;
        PanelResult acc{0.0, 0.0, 0.0};
        for (int p = 0; p < panels; ++p) {
            const PanelResult r = adaptive(f, a + p * w, a + (p + 1) * w, 1e-13, abs_density, 16);
            acc.value += r.value;
            acc.abs_value += r.abs_value;
            acc.error += r.error;
        }
        return acc;
    }

}  // namespace detail

template <class F>
IntegralResult integrate_real_line(F&& f, const QuadratureSpec& spec) {
    IntegralResult out;
    double cutoff = spec.initial_cutoff;
    // local error budget per unit length derived from the absolute floor
    const double abs_density = 1e-3 * spec.absolute_tolerance / spec.initial_cutoff;
    detail::PanelResult total = detail::integrate_span(f, -cutoff, cutoff, spec.panel_width, abs_density);
    std::vector<double> h{1.0 / cutoff};
    std::vector<cplx> raw{total.value};
    std::vector<double> l1{total.abs_value};
    out.trace.emplace_back(cutoff, total.value);

    Extrapolated previous{total.value, 0.0};
    int agreeing = 0;
    for (int j = 1; j <= spec.max_doublings; ++j) {
        const double next = 2.0 * cutoff;
        const detail::PanelResult left = detail::integrate_span(f, -next, -cutoff, spec.panel_width, abs_density);
        const detail::PanelResult right = detail::integrate_span(f, cutoff, next, spec.panel_width, abs_density);
        cutoff = next;
        total.value += left.value + right.value;
        total.abs_value += left.abs_value + right.abs_value;
        total.error += left.error + right.error;
        h.push_back(1.0 / cutoff);
        raw.push_back(total.value);
        l1.push_back(total.abs_value);
        out.trace.emplace_back(cutoff, total.value);

        const std::size_t n = std::min<std::size_t>(h.size(), static_cast<std::size_t>(spec.extrapolation_levels));
        const Extrapolated ex = extrapolate_to_zero(std::span(h).last(n), std::span<const cplx>(raw).last(n));
        const double scale = std::max(total.abs_value, 1e-300);
        const double step = std::abs(ex.value - previous.value);
        agreeing = (j >= 2 && step <= std::max(spec.tolerance * scale, spec.absolute_tolerance)) ? agreeing + 1 : 0;
        out.value = ex.value;
        out.error = std::max(step, ex.error);
        out.l1 = total.abs_value;
        previous = ex;
        if (agreeing >= 2) {
            out.converged = true;
            break;
        }
        // L1 increments that fail to shrink signal a non-integrable tail; the
        // first few shells are skipped since bumps beyond the initial cutoff are common
        if (l1.size() >= 6) {
            const std::size_t k = l1.size();
            const double d1 = l1[k - 3] - l1[k - 4], d2 = l1[k - 2] - l1[k - 3], d3 = l1[k - 1] - l1[k - 2];
            if (d1 > 0 && d2 >= 0.9 * d1 && d3 >= 0.9 * d2 &&
                d3 > std::max(spec.tolerance * scale, spec.absolute_tolerance)) {
                out.divergent = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace debranges
