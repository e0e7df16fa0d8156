#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "debranges/errors.hpp"

namespace debranges {

/// Whether a zero sequence is complete or a window of an infinite sequence.
enum class Extent { finite, truncated };

/// Ordered set of simple real zeros, e.g. the spectrum of one selfadjoint extension.
class ZeroSequence {
public:
    static constexpr double origin_tolerance = 1e-12;

    ZeroSequence() = default;

    ZeroSequence(std::vector<double> values, Extent extent) : values_(std::move(values)), extent_(extent) {
        for (double& v : values_) {
            if (!std::isfinite(v)) throw ConfigurationError("zero sequence contains a non-finite value");
            if (std::abs(v) < origin_tolerance) v = 0.0;
        }
        std::sort(values_.begin(), values_.end());
        for (std::size_t i = 1; i < values_.size(); ++i) {
            if (!(values_[i] > values_[i - 1])) {
                throw ConfigurationError("zero sequence has a repeated value " + std::to_string(values_[i]) +
                                         " (zeros must be simple)");
            }
        }
        for (double v : values_) {
            if (v > 0) positive_.push_back(v);
            else if (v < 0) negative_.push_back(v);
            else has_origin_ = true;
        }
        std::reverse(negative_.begin(), negative_.end());

        by_modulus_ = positive_;
        by_modulus_.insert(by_modulus_.end(), negative_.begin(), negative_.end());
        std::stable_sort(by_modulus_.begin(), by_modulus_.end(), [](double a, double b) {
            if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
            return a < b;
        });
    }

    const std::vector<double>& values() const noexcept { return values_; }
    /// Positive zeros by increasing modulus.
    const std::vector<double>& positive() const noexcept { return positive_; }
    /// Negative zeros by increasing modulus.
    const std::vector<double>& negative() const noexcept { return negative_; }
    /// Nonzero members ordered by increasing modulus (ties: negative first).
    const std::vector<double>& by_modulus() const noexcept { return by_modulus_; }

    bool has_origin() const noexcept { return has_origin_; }
    Extent extent() const noexcept { return extent_; }
    bool is_finite() const noexcept { return extent_ == Extent::finite; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    /// Radius up to which the sequence is known on both sides of the origin.
    double data_radius() const noexcept {
        if (is_finite()) return std::numeric_limits<double>::infinity();
        if (!positive_.empty() && !negative_.empty()) return std::min(positive_.back(), -negative_.back());
        if (!positive_.empty()) return positive_.back();
        if (!negative_.empty()) return -negative_.back();
        return 0.0;
    }

    bool contains(double x, double rel_tol = 1e-12) const {
        auto it = std::lower_bound(values_.begin(), values_.end(), x - rel_tol * std::max(1.0, std::abs(x)));
        return it != values_.end() && std::abs(*it - x) <= rel_tol * std::max(1.0, std::abs(x));
    }

    ZeroSequence scaled(double lambda) const {
        std::vector<double> v(values_);
        for (double& x : v) x *= lambda;
        return ZeroSequence(std::move(v), extent_);
    }

private:
    std::vector<double> values_;
    std::vector<double> positive_;
    std::vector<double> negative_;
    std::vector<double> by_modulus_;
    bool has_origin_ = false;
    Extent extent_ = Extent::finite;
};

/// Symmetric truncation schedule: target radii r0 * 2^j, j < max_doublings.
struct TruncationSchedule {
    double r0 = 1.0;
    int max_doublings = 40;
    /// Number of trailing radii fed to the extrapolation.
    int extrapolation_levels = 6;
    /// Relative error bound below which an estimate counts as converged.
    double tolerance = 1e-8;
};

/// A symmetric cut: all nonzero members with modulus below `radius`; `count`
/// is their number in by_modulus() order.
struct SymmetricCut {
    double radius = 0.0;
    std::size_t count = 0;
};

/// Cuts placed at the midpoint of the first modulus gap at or above each target
/// radius, restricted to the window where the sequence is known on both sides.
/// A finite sequence yields a single cut containing every member.
inline std::vector<SymmetricCut> symmetric_cuts(const ZeroSequence& zeros, const TruncationSchedule& schedule) {
    const auto& m = zeros.by_modulus();
    if (zeros.is_finite()) return {{std::numeric_limits<double>::infinity(), m.size()}};

    std::vector<SymmetricCut> cuts;
    const double limit = zeros.data_radius();
    double target = schedule.r0;
    for (int j = 0; j < schedule.max_doublings && target < limit; ++j, target *= 2.0) {
        std::size_t i = static_cast<std::size_t>(
            std::upper_bound(m.begin(), m.end(), target, [](double t, double b) { return t < std::abs(b); }) - m.begin());
        // advance to a gap of positive width
        while (i > 0 && i < m.size() && std::abs(m[i]) == std::abs(m[i - 1])) ++i;
        if (i == 0 || i >= m.size()) continue;
        const double radius = 0.5 * (std::abs(m[i - 1]) + std::abs(m[i]));
        if (radius >= limit) break;
        if (!cuts.empty() && cuts.back().count == i) continue;
        cuts.push_back({radius, i});
    }
    return cuts;
}

/// Outcome of comparing two sorted sequences for strict alternation.
struct InterlaceResult {
    bool interlaced = false;
    bool inconclusive = false;
    /// Two consecutive members of the same sequence with nothing of the other between them.
    std::optional<std::pair<double, double>> violation;
};

/// Checks that between consecutive elements of either sequence lies exactly one
/// element of the other. Only the overlapping window of the two ranges, widened
/// by one neighbour on each side, is examined; when the ranges are disjoint the
/// full merged sequence is examined.
inline InterlaceResult interlace_check(const ZeroSequence& a, const ZeroSequence& b) {
    InterlaceResult out;
    if (a.empty() || b.empty()) {
        out.inconclusive = true;
        return out;
    }
    struct Tagged { double x; int tag; };
    std::vector<Tagged> merged;
    merged.reserve(a.size() + b.size());
    for (double x : a.values()) merged.push_back({x, 0});
    for (double x : b.values()) merged.push_back({x, 1});
    std::sort(merged.begin(), merged.end(), [](const Tagged& p, const Tagged& q) { return p.x < q.x; });

    const double lo = std::max(a.values().front(), b.values().front());
    const double hi = std::min(a.values().back(), b.values().back());
    std::size_t first = 0, last = merged.size();
    if (lo <= hi) {
        while (first < merged.size() && merged[first].x < lo) ++first;
        if (first > 0) --first;
        while (last > 0 && merged[last - 1].x > hi) --last;
        if (last < merged.size()) ++last;
    }
    for (std::size_t i = first + 1; i < last; ++i) {
        if (merged[i].x == merged[i - 1].x || merged[i].tag == merged[i - 1].tag) {
            out.violation = std::make_pair(merged[i - 1].x, merged[i].x);
            return out;
        }
    }
    out.interlaced = true;
    return out;
}

}  // namespace debranges
