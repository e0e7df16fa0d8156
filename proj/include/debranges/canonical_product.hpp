#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "debranges/extrapolation.hpp"
#include "debranges/types.hpp"
#include "debranges/zero_sequence.hpp"

namespace debranges {

/// Symmetric-truncation estimate of a canonical product and its derivative.
struct ProductEstimate {
    cplx value{};
    cplx deriv{};
    /// Absolute error bound on `value`, from the last two extrapolated estimates.
    double error_bound = 0.0;
    bool converged = true;
};

struct RealEstimate {
    double value = 0.0;
    double error_bound = 0.0;
    bool converged = true;
};

namespace detail {

    struct Snapshot {
        double radius;
        Jet partial;
    };

    // Partial products of (1 - z/b) over nonzero members in modulus order, one
    // snapshot per cut. The member at `skip` (an index into by_modulus) is left out.
    inline std::vector<Snapshot> partial_products(const ZeroSequence& zeros, cplx z,
                                                  const std::vector<SymmetricCut>& cuts,
                                                  std::optional<std::size_t> skip, bool want_deriv) {
        const auto& m = zeros.by_modulus();
        std::vector<Snapshot> out;
        out.reserve(cuts.size());
        Jet acc{1.0, 0.0};
        std::size_t i = 0;
        for (const auto& cut : cuts) {
            for (; i < cut.count; ++i) {
                if (skip && *skip == i) continue;
                const double b = m[i];
                if (want_deriv) acc *= Jet{1.0 - z / b, -1.0 / b};
                else acc.value *= 1.0 - z / b;
            }
            out.push_back({cut.radius, acc});
        }
        return out;
    }

    // Extrapolates the trailing snapshots to infinite radius. The logarithm of
    // each snapshot relative to the last one and the logarithmic derivative are
    // extrapolated in 1/r, which keeps the expansion mild for moderate |z|.
    inline ProductEstimate extrapolate_snapshots(const std::vector<Snapshot>& snaps, bool exact,
                                                 const TruncationSchedule& schedule, bool want_deriv) {
        ProductEstimate est;
        if (snaps.empty()) {
            est.value = 1.0;
            est.converged = exact;
            est.error_bound = exact ? 0.0 : std::numeric_limits<double>::infinity();
            return est;
        }
        const Jet last = snaps.back().partial;
        if (exact) {
            est.value = last.value;
            est.deriv = last.deriv;
            return est;
        }
        if (last.value == cplx{0.0}) {
            est.converged = false;
            est.error_bound = std::numeric_limits<double>::infinity();
            return est;
        }
        const std::size_t levels = std::min<std::size_t>(snaps.size(), std::max(2, schedule.extrapolation_levels));
        if (snaps.size() < 2) {
            est.value = last.value;
            est.deriv = last.deriv;
            est.converged = false;
            est.error_bound = std::numeric_limits<double>::infinity();
            return est;
        }
        std::vector<double> h;
        std::vector<cplx> logs, logderivs;
        bool wild = false;
        for (std::size_t k = snaps.size() - levels; k < snaps.size(); ++k) {
            const Jet& p = snaps[k].partial;
            h.push_back(1.0 / snaps[k].radius);
            if (p.value == cplx{0.0}) {
                wild = true;
                logs.push_back(0.0);
                logderivs.push_back(0.0);
                continue;
            }
            const cplx l = std::log(p.value / last.value);
            if (std::abs(l) > 8.0) wild = true;
            logs.push_back(l);
            if (want_deriv) logderivs.push_back(p.deriv / p.value);
        }
        const Extrapolated lv = extrapolate_to_zero(h, logs);
        est.value = last.value * std::exp(lv.value);
        double rel_err = lv.error;
        if (want_deriv) {
            const Extrapolated ld = extrapolate_to_zero(h, logderivs);
            est.deriv = est.value * ld.value;
            rel_err = std::max(rel_err, ld.error / std::max(1.0, std::abs(ld.value)));
        }
        if (wild) rel_err = std::max(rel_err, 1.0);
        est.error_bound = std::abs(est.value) * rel_err;
        est.converged = !wild && rel_err <= schedule.tolerance;
        return est;
    }

    inline std::optional<std::size_t> member_index(const ZeroSequence& zeros, cplx z) {
        if (z.imag() != 0.0 || z.real() == 0.0) return std::nullopt;
        const auto& m = zeros.by_modulus();
        const double x = z.real();
        const double tol = 1e-12 * std::abs(x);
        auto it = std::lower_bound(m.begin(), m.end(), std::abs(x) - tol,
                                   [](double b, double t) { return std::abs(b) < t; });
        for (; it != m.end() && std::abs(*it) <= std::abs(x) + tol; ++it) {
            if (std::abs(*it - x) <= tol) return static_cast<std::size_t>(it - m.begin());
        }
        return std::nullopt;
    }

}  // namespace detail

/// Estimate of prod_{0<|b|<=r} (1 - z/b) as r grows, excluding the member at `skip`.
inline ProductEstimate reduced_product(const ZeroSequence& zeros, cplx z, const TruncationSchedule& schedule,
                                       std::optional<std::size_t> skip = std::nullopt, bool want_deriv = true) {
    const auto cuts = symmetric_cuts(zeros, schedule);
    const auto snaps = detail::partial_products(zeros, z, cuts, skip, want_deriv);
    return detail::extrapolate_snapshots(snaps, zeros.is_finite(), schedule, want_deriv);
}

/// The canonical product h(z) over a zero sequence: the symmetric limit of
/// prod (1 - z/b_n), with an extra factor z when the origin is a member.
inline ProductEstimate canonical_product(const ZeroSequence& zeros, cplx z,
                                         const TruncationSchedule& schedule = {}, bool want_deriv = true) {
    const bool origin = zeros.has_origin();
    if (origin && z == cplx{0.0}) {
        return {0.0, 1.0, 0.0, true};
    }
    if (const auto idx = detail::member_index(zeros, z)) {
        // h vanishes at a member; h'(b) = -(1/b) * prod_{m != n} (1 - b/b_m), times b in the origin case.
        const double b = zeros.by_modulus()[*idx];
        ProductEstimate rest = reduced_product(zeros, z, schedule, idx, false);
        const cplx scale = origin ? cplx{-1.0} : cplx{-1.0 / b};
        return {0.0, scale * rest.value, std::abs(scale) * rest.error_bound, rest.converged};
    }
    ProductEstimate p = reduced_product(zeros, z, schedule, std::nullopt, want_deriv);
    if (origin) {
        p.deriv = p.value + z * p.deriv;
        p.value *= z;
        p.error_bound *= std::abs(z);
    }
    return p;
}

/// h'(x) at a member x of the zero sequence.
inline RealEstimate product_derivative_at_zero(const ZeroSequence& zeros, double x,
                                               const TruncationSchedule& schedule = {}) {
    if (!zeros.contains(x)) throw ConfigurationError("point is not a member of the zero sequence");
    const ProductEstimate p = canonical_product(zeros, cplx{x, 0.0}, schedule, true);
    return {p.deriv.real(), p.error_bound, p.converged};
}

}  // namespace debranges
