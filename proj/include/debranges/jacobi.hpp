#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "debranges/errors.hpp"
#include "debranges/types.hpp"
#include "debranges/zero_sequence.hpp"

namespace debranges {

/// Entries k = 1, 2, ... of a Jacobi matrix diagonal or off-diagonal.
class SequenceRule {
public:
    enum class Kind { constant, geometric, list };

    static SequenceRule constant(double value) { return SequenceRule(Kind::constant, value, 1.0, {}); }
    /// scale * ratio^k
    static SequenceRule geometric(double ratio, double scale = 1.0) {
        return SequenceRule(Kind::geometric, scale, ratio, {});
    }
    static SequenceRule list(std::vector<double> values) { return SequenceRule(Kind::list, 0.0, 1.0, std::move(values)); }

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }
    double ratio() const noexcept { return ratio_; }
    const std::vector<double>& values() const noexcept { return list_; }

    /// Number of available entries, unbounded for generator rules.
    std::size_t available() const noexcept {
        return kind_ == Kind::list ? list_.size() : std::numeric_limits<std::size_t>::max();
    }

    double at(std::size_t k) const {
        switch (kind_) {
            case Kind::constant: return value_;
            case Kind::geometric: return value_ * std::pow(ratio_, static_cast<double>(k));
            default:
                if (k < 1 || k > list_.size()) throw ConfigurationError("sequence index beyond the explicit list");
                return list_[k - 1];
        }
    }

private:
    SequenceRule(Kind kind, double value, double ratio, std::vector<double> list)
        : kind_(kind), value_(value), ratio_(ratio), list_(std::move(list)) {}

    Kind kind_;
    double value_;
    double ratio_;
    std::vector<double> list_;
};

/// Semi-infinite tridiagonal matrix with off-diagonal b_k > 0 and diagonal q_k.
class JacobiMatrix {
public:
    JacobiMatrix(SequenceRule b, SequenceRule q, int order) : b_(std::move(b)), q_(std::move(q)), order_(order) {
        if (order_ < 2) throw ConfigurationError("Jacobi truncation order must be at least 2");
        const std::size_t n = std::min<std::size_t>(b_.available(), static_cast<std::size_t>(order_));
        for (std::size_t k = 1; k <= n; ++k) {
            const double bk = b_.at(k);
            if (!(bk > 0.0) || !std::isfinite(bk)) throw ConfigurationError("off-diagonal entries must be positive");
        }
        for (std::size_t k = 1; k <= std::min<std::size_t>(q_.available(), static_cast<std::size_t>(order_)); ++k) {
            if (!std::isfinite(q_.at(k))) throw ConfigurationError("diagonal entries must be finite");
        }
    }

    double b(std::size_t k) const { return b_.at(k); }
    double q(std::size_t k) const { return q_.at(k); }
    int order() const noexcept { return order_; }
    const SequenceRule& b_rule() const noexcept { return b_; }
    const SequenceRule& q_rule() const noexcept { return q_; }
    std::size_t available() const noexcept { return std::min(b_.available(), q_.available()); }

private:
    SequenceRule b_;
    SequenceRule q_;
    int order_;
};

/// P_0..P_n and Q_0..Q_n at one point.
struct PolynomialPair {
    cplx z{};
    std::vector<cplx> P;
    std::vector<cplx> Q;
    /// Largest k with P_k, Q_k finite; below n only when `overflow` is set.
    int valid_through = 0;
    bool overflow = false;
};

/// First- and second-kind polynomials from
///     b_{k-1} u_{k-1} + q_k u_k + b_k u_{k+1} = z u_k,   u_k = P_{k-1} or Q_{k-1},
/// with P_0 = 1, P_1 = (z - q_1)/b_1 (first row) and Q_0 = 0, Q_1 = 1/b_1.
inline PolynomialPair recurrence_eval(const JacobiMatrix& j, cplx z, int n) {
    if (n < 1) throw ConfigurationError("recurrence order must be positive");
    if (static_cast<std::size_t>(n) > j.available()) throw ConfigurationError("order exceeds the available sequence length");
    constexpr double limit = 1e300;
    PolynomialPair out;
    out.z = z;
    out.P.reserve(static_cast<std::size_t>(n) + 1);
    out.Q.reserve(static_cast<std::size_t>(n) + 1);
    out.P.push_back(1.0);
    out.Q.push_back(0.0);
    out.P.push_back((z - j.q(1)) / j.b(1));
    out.Q.push_back(1.0 / j.b(1));
    out.valid_through = 1;
    for (int k = 2; k <= n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const double bk = j.b(ku), bk1 = j.b(ku - 1), qk = j.q(ku);
        const cplx p = ((z - qk) * out.P[ku - 1] - bk1 * out.P[ku - 2]) / bk;
        const cplx q = ((z - qk) * out.Q[ku - 1] - bk1 * out.Q[ku - 2]) / bk;
        if (!is_finite(p) || !is_finite(q) || std::abs(p) > limit || std::abs(q) > limit) {
            out.overflow = true;
            break;
        }
        out.P.push_back(p);
        out.Q.push_back(q);
        out.valid_through = k;
    }
    return out;
}

/// Residuals of rows 1..n of the difference equation for P (index 0) and Q (index 1).
struct RowResiduals {
    std::vector<cplx> p;
    std::vector<cplx> q;
    std::vector<double> scale;
};

inline RowResiduals row_residuals(const JacobiMatrix& j, const PolynomialPair& pp) {
    RowResiduals r;
    const int n = pp.valid_through;
    for (int k = 1; k <= n; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (ku >= pp.P.size()) break;
        const double bk = j.b(ku), qk = j.q(ku);
        const double bk1 = k > 1 ? j.b(ku - 1) : 0.0;
        const cplx pm = k > 1 ? pp.P[ku - 2] : cplx{}, qm = k > 1 ? pp.Q[ku - 2] : cplx{};
        r.p.push_back(bk1 * pm + qk * pp.P[ku - 1] + bk * pp.P[ku] - pp.z * pp.P[ku - 1]);
        r.q.push_back(bk1 * qm + qk * pp.Q[ku - 1] + bk * pp.Q[ku] - pp.z * pp.Q[ku - 1]);
        r.scale.push_back(std::abs(bk1 * pm) + std::abs(qk * pp.P[ku - 1]) + std::abs(bk * pp.P[ku]) +
                          std::abs(pp.z * pp.P[ku - 1]));
    }
    return r;
}

/// max_n |b_n (P_{n-1} Q_n - P_n Q_{n-1}) - 1| / max(1, |b_n P_{n-1} Q_n| + |b_n P_n Q_{n-1}|).
inline double wronskian_deviation(const JacobiMatrix& j, const PolynomialPair& pp) {
    double worst = 0.0;
    for (int n = 1; n <= pp.valid_through; ++n) {
        const auto nu = static_cast<std::size_t>(n);
        const double bn = j.b(nu);
        const cplx a = bn * pp.P[nu - 1] * pp.Q[nu];
        const cplx c = bn * pp.P[nu] * pp.Q[nu - 1];
        const double scale = std::max(1.0, std::abs(a) + std::abs(c));
        worst = std::max(worst, std::abs(a - c - 1.0) / scale);
    }
    return worst;
}

/// max |<theta(z), delta_2> - 1/b_1| = max |Q_1(z) - 1/b_1| over the samples.
inline double gauge_identity_check(const JacobiMatrix& j, std::span<const cplx> zs) {
    double worst = 0.0;
    const double target = 1.0 / j.b(1);
    for (cplx z : zs) {
        const PolynomialPair pp = recurrence_eval(j, z, 2);
        worst = std::max(worst, std::abs(pp.Q[1] - target));
    }
    return worst;
}

enum class CircleStatus { bounded, divergent, inconclusive };

inline const char* to_string(CircleStatus s) {
    switch (s) {
        case CircleStatus::bounded: return "bounded";
        case CircleStatus::divergent: return "divergent";
        default: return "inconclusive";
    }
}

struct LimitCircleReport {
    CircleStatus status = CircleStatus::inconclusive;
    /// (N, S_N) with S_N = sum_{k<=N} |P_k(z0)|^2 + |Q_k(z0)|^2
    std::vector<std::pair<int, double>> trace;
    std::string note;
};

/// Square-summability of P_k(z0), Q_k(z0) along an increasing sweep of orders.
inline LimitCircleReport limit_circle_diagnostic(const JacobiMatrix& j, cplx z0, std::span<const int> sweep,
                                                 double tol_rel = 1e-6, double growth_exponent = 0.5) {
    LimitCircleReport rep;
    if (z0.imag() == 0.0) throw ConfigurationError("limit-circle diagnostic needs a non-real point");
    if (sweep.empty()) {
        rep.note = "empty sweep";
        return rep;
    }
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        if (sweep[i] <= sweep[i - 1]) throw ConfigurationError("order sweep must be increasing");
    }
    const PolynomialPair pp = recurrence_eval(j, z0, sweep.back());
    double s = 0.0;
    int k = 0;
    for (int n : sweep) {
        if (n > pp.valid_through) {
            rep.status = CircleStatus::divergent;
            rep.note = "recurrence overflow beyond k = " + std::to_string(pp.valid_through);
            return rep;
        }
        for (; k <= n; ++k) s += std::norm(pp.P[static_cast<std::size_t>(k)]) + std::norm(pp.Q[static_cast<std::size_t>(k)]);
        rep.trace.emplace_back(n, s);
    }
    if (rep.trace.size() < 3) {
        rep.note = "sweep too short";
        return rep;
    }
    const std::size_t m = rep.trace.size();
    const double rel_last = (rep.trace[m - 1].second - rep.trace[m - 2].second) / rep.trace[m - 1].second;
    const double rel_prev = (rep.trace[m - 2].second - rep.trace[m - 3].second) / rep.trace[m - 2].second;
    auto exponent = [&](std::size_t i) {
        return std::log(rep.trace[i].second / rep.trace[i - 1].second) /
               std::log(static_cast<double>(rep.trace[i].first) / rep.trace[i - 1].first);
    };
    if (rel_last <= tol_rel && rel_prev <= std::sqrt(tol_rel)) {
        rep.status = CircleStatus::bounded;
        rep.note = "partial sums flatten";
    } else if (exponent(m - 1) >= growth_exponent && exponent(m - 2) >= growth_exponent) {
        rep.status = CircleStatus::divergent;
        rep.note = "sustained growth of the partial sums";
    } else {
        rep.note = "growth pattern undecided";
    }
    return rep;
}

/// Eigenvalues of the leading N x N block with q_N replaced by q_N + tau b_N;
/// an infinite tau deletes the last row and column.
inline ZeroSequence truncated_extension_spectra(const JacobiMatrix& j, int n, double tau) {
    if (n < 2) throw ConfigurationError("truncation order must be at least 2");
    if (static_cast<std::size_t>(n) > j.available()) throw ConfigurationError("order exceeds the available sequence length");
    const int size = std::isinf(tau) ? n - 1 : n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (int k = 1; k <= size; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        m(k - 1, k - 1) = j.q(ku);
        if (k < size) m(k - 1, k) = m(k, k - 1) = j.b(ku);
    }
    if (!std::isinf(tau)) m(size - 1, size - 1) += tau * j.b(static_cast<std::size_t>(n));

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigen-solver failed on the truncated Jacobi block (size " + std::to_string(size) + ")");
    }
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + size);
    const double spread = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (std::size_t i = 1; i < ev.size(); ++i) {
        if (ev[i] - ev[i - 1] <= 1e-13 * spread) {
            throw NumericError("eigenvalues not numerically simple near " + std::to_string(ev[i]));
        }
    }
    return ZeroSequence(std::move(ev), Extent::finite);
}

}  // namespace debranges
