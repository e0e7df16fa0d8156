#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "debranges/canonical_product.hpp"
#include "debranges/errors.hpp"
#include "debranges/extrapolation.hpp"
#include "debranges/zero_sequence.hpp"

namespace debranges {

enum class Status { holds, fails, inconclusive };
enum class Overall { entire_gauge_present, not_present, inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::fails: return "fails";
        default: return "inconclusive";
    }
}

inline const char* to_string(Overall o) {
    switch (o) {
        case Overall::entire_gauge_present: return "entire-gauge-present";
        case Overall::not_present: return "not-present";
        default: return "inconclusive";
    }
}

struct CriterionOptions {
    TruncationSchedule schedule{};
    /// C1: spread allowed over the last `c1_window` partial sums.
    double tol_c1 = 1e-6;
    int c1_window = 4;
    /// C1 fails on monotone drift whose increment per radius doubling keeps at
    /// least this fraction of the previous one.
    double c1_drift = 0.8;
    /// C2: relative tolerance on lim n/x_n^+ + lim n/x_n^-.
    double tol_c2 = 1e-3;
    /// Minimum number of points per side (C2) or resolved terms (C3).
    int n_min = 16;
    /// C3: bound on the estimated unresolved remainder, relative to the sum.
    double tol_c3 = 1e-8;
};

struct C1Result {
    Status status = Status::inconclusive;
    double limit = 0.0;
    /// (radius, symmetric partial sum of 1/x_n)
    std::vector<std::pair<double, double>> trace;
    std::string note;
};

struct C2Result {
    Status status = Status::inconclusive;
    double limit_positive = 0.0;
    double limit_negative = 0.0;
    double gap = 0.0;
    double error_positive = 0.0;
    double error_negative = 0.0;
    std::string note;
};

struct C3Result {
    Status status = Status::inconclusive;
    std::vector<double> points;
    std::vector<double> terms;
    std::vector<double> partial_sums;
    double sum = 0.0;
    /// Least-squares exponent p of terms ~ |x|^p over the resolved tail.
    double decay_exponent = 0.0;
    double remainder_estimate = 0.0;
    std::size_t resolved = 0;
    std::size_t total = 0;
    std::string note;
};

struct CriterionVerdict {
    C1Result c1;
    C2Result c2;
    C3Result c3;
    Overall overall = Overall::inconclusive;
};

// ---------------------------------------------------------------------------

/// Existence of lim_{r -> oo} sum_{0<|x_n|<=r} 1/x_n.
inline C1Result check_c1(const ZeroSequence& zeros, const CriterionOptions& opt = {}) {
    C1Result r;
    const auto& m = zeros.by_modulus();
    if (zeros.is_finite()) {
        double s = 0.0;
        for (double b : m) s += 1.0 / b;
        r.limit = s;
        r.trace.emplace_back(m.empty() ? 0.0 : std::abs(m.back()), s);
        r.status = Status::holds;
        r.note = "finite sequence: limit exists trivially";
        return r;
    }
    const auto cuts = symmetric_cuts(zeros, opt.schedule);
    // compensated summation in modulus order
    double s = 0.0, c = 0.0;
    std::size_t i = 0;
    for (const auto& cut : cuts) {
        for (; i < cut.count; ++i) {
            const double y = 1.0 / m[i] - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        r.trace.emplace_back(cut.radius, s);
    }
    const auto k = static_cast<std::size_t>(std::max(2, opt.c1_window));
    if (r.trace.size() < k) {
        r.note = "too few symmetric radii inside the data window";
        return r;
    }
    r.limit = r.trace.back().second;
    double lo = r.limit, hi = r.limit;
    for (std::size_t j = r.trace.size() - k; j < r.trace.size(); ++j) {
        lo = std::min(lo, r.trace[j].second);
        hi = std::max(hi, r.trace[j].second);
    }
    if (hi - lo <= opt.tol_c1) {
        r.status = Status::holds;
        r.note = "partial sums settled over the last radii";
        return r;
    }
    // drift: monotone increments that do not shrink from one radius doubling to the next
    // (a summable tail shrinks them geometrically); the test is invariant under scaling
    int sign = 0;
    bool drift = true;
    double prev = 0.0;
    for (std::size_t j = r.trace.size() - k + 1; j < r.trace.size(); ++j) {
        const double d = r.trace[j].second - r.trace[j - 1].second;
        const double octaves = std::log2(r.trace[j].first / r.trace[j - 1].first);
        const double per_octave = std::abs(d) / std::max(octaves, 1e-300);
        const int sj = d > 0 ? 1 : -1;
        if (sign == 0) sign = sj;
        if (sj != sign || std::abs(d) <= opt.tol_c1) drift = false;
        if (prev > 0.0 && per_octave < opt.c1_drift * prev) drift = false;
        prev = per_octave;
    }
    if (drift) {
        r.status = Status::fails;
        r.note = "monotone non-shrinking drift of the partial sums";
    } else {
        r.note = "partial sums neither settled nor drifting";
    }
    return r;
}

namespace detail {
    // lim n / x_n along one side by window means over (N/2, N] and extrapolation in 1/N.
    inline Extrapolated side_density(const std::vector<double>& side) {
        std::vector<double> h;
        std::vector<cplx> y;
        std::size_t n = side.size();
        std::vector<std::pair<double, double>> levels;
        while (n >= 8 && levels.size() < 5) {
            double sum = 0.0;
            std::size_t count = 0;
            for (std::size_t k = n / 2 + 1; k <= n; ++k, ++count) sum += static_cast<double>(k) / side[k - 1];
            levels.emplace_back(1.0 / static_cast<double>(n), sum / static_cast<double>(count));
            n /= 2;
        }
        std::reverse(levels.begin(), levels.end());
        for (const auto& [hh, v] : levels) {
            h.push_back(hh);
            y.emplace_back(v);
        }
        Extrapolated e = extrapolate_to_zero(h, y);
        return e;
    }
}  // namespace detail

/// lim n/x_n^+ = -lim n/x_n^- < oo, by window means with extrapolation.
inline C2Result check_c2(const ZeroSequence& zeros, const CriterionOptions& opt = {}) {
    C2Result r;
    if (zeros.is_finite()) {
        r.status = Status::holds;
        r.note = "finite sequence: both limits vanish";
        return r;
    }
    const auto& pos = zeros.positive();
    const auto& neg = zeros.negative();
    const auto n_min = static_cast<std::size_t>(opt.n_min);
    if (pos.size() < n_min || neg.size() < n_min) {
        r.note = "fewer than n_min points on one side";
        return r;
    }
    const Extrapolated lp = detail::side_density(pos);
    const Extrapolated ln = detail::side_density(neg);
    r.limit_positive = lp.value.real();
    r.limit_negative = ln.value.real();
    r.error_positive = lp.error;
    r.error_negative = ln.error;
    r.gap = std::abs(r.limit_positive + r.limit_negative);
    const double allowed = opt.tol_c2 * (std::abs(r.limit_positive) + 1.0);
    const double err = lp.error + ln.error;
    if (r.gap + err <= allowed) {
        r.status = Status::holds;
        r.note = "density limits agree";
    } else if (r.gap - err > allowed) {
        r.status = Status::fails;
        r.note = "density limits differ";
    } else {
        r.note = "density limits not resolved to tolerance";
    }
    return r;
}

/// Convergence of sum |1 / (h_0(x_n) h_gamma'(x_n))| over the zeros x_n of s_gamma.
inline C3Result check_c3(const ZeroSequence& zeros_gamma, const ZeroSequence& zeros_zero,
                         const CriterionOptions& opt = {}) {
    C3Result r;
    std::vector<double> order;
    if (zeros_gamma.has_origin()) order.push_back(0.0);
    order.insert(order.end(), zeros_gamma.by_modulus().begin(), zeros_gamma.by_modulus().end());
    r.total = order.size();
    if (order.empty()) {
        r.status = Status::holds;
        r.note = "empty series";
        return r;
    }
    double sum = 0.0;
    for (double x : order) {
        const ProductEstimate h0 = canonical_product(zeros_zero, x, opt.schedule, false);
        const RealEstimate dg = product_derivative_at_zero(zeros_gamma, x, opt.schedule);
        if (!h0.converged || !dg.converged) break;
        const double denom = std::abs(h0.value * dg.value);
        if (denom == 0.0) throw InvalidSpectra("h_0 vanishes at a zero of s_gamma: the spectra share a point");
        const double t = 1.0 / denom;
        sum += t;
        r.points.push_back(x);
        r.terms.push_back(t);
        r.partial_sums.push_back(sum);
    }
    r.resolved = r.terms.size();
    r.sum = sum;

    const bool complete = r.resolved == r.total && zeros_gamma.is_finite();
    if (complete) {
        r.status = Status::holds;
        r.note = "finite series";
        return r;
    }
    if (r.resolved < static_cast<std::size_t>(opt.n_min)) {
        r.note = "too few terms resolved by the canonical products";
        return r;
    }

    // tail: the second half of the resolved terms
    const std::size_t start = r.resolved / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
    for (std::size_t k = start; k < r.resolved; ++k) {
        tmin = std::min(tmin, r.terms[k]);
        tmax = std::max(tmax, r.terms[k]);
        if (r.points[k] == 0.0) continue;
        const double lx = std::log(std::abs(r.points[k])), ly = std::log(r.terms[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        n += 1;
    }
    const double denom = n * sxx - sx * sx;
    r.decay_exponent = denom > 0 ? (n * sxy - sx * sy) / denom : 0.0;

    const double x_last = std::abs(r.points.back());
    const double x_first = std::abs(r.points[start]);
    const double density = x_last > x_first ? static_cast<double>(r.resolved - start) / (x_last - x_first) : 0.0;
    if (r.decay_exponent < -1.0) {
        r.remainder_estimate = density * r.terms.back() * x_last / (-1.0 - r.decay_exponent);
    } else {
        r.remainder_estimate = std::numeric_limits<double>::infinity();
    }

    if (tmin >= 0.5 * tmax && r.decay_exponent > -0.25) {
        r.status = Status::fails;
        r.note = "tail terms bounded below by a positive constant";
    } else if (r.decay_exponent < -1.0 && r.remainder_estimate <= opt.tol_c3 * std::max(1.0, r.sum)) {
        r.status = Status::holds;
        r.note = "terms decay faster than 1/|x| and the remainder is below tolerance";
    } else {
        r.note = "series behaviour not decided by the resolved terms";
    }
    return r;
}

/// Decides whether a zero-free real entire function lies in the space from
/// the spectra of s_0 and s_gamma.
inline CriterionVerdict entire_criterion(const ZeroSequence& sp0, const ZeroSequence& spg,
                                         const CriterionOptions& opt = {}) {
    const InterlaceResult il = interlace_check(sp0, spg);
    if (il.violation) {
        throw InvalidSpectra("spectra do not interlace near (" + std::to_string(il.violation->first) + ", " +
                             std::to_string(il.violation->second) + ")");
    }
    CriterionVerdict v;
    v.c1 = check_c1(spg, opt);
    v.c2 = check_c2(spg, opt);
    v.c3 = check_c3(spg, sp0, opt);
    const Status all[] = {v.c1.status, v.c2.status, v.c3.status};
    if (std::all_of(std::begin(all), std::end(all), [](Status s) { return s == Status::holds; })) {
        v.overall = Overall::entire_gauge_present;
    } else if (std::any_of(std::begin(all), std::end(all), [](Status s) { return s == Status::fails; })) {
        v.overall = Overall::not_present;
    } else {
        v.overall = Overall::inconclusive;
    }
    return v;
}

}  // namespace debranges
