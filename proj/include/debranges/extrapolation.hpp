#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "debranges/types.hpp"

namespace debranges {

struct Extrapolated {
    cplx value{};
    double error = 0.0;
};

/// Polynomial (Neville) extrapolation of samples y(h_i) to h = 0.
///
/// The samples are expected in order of decreasing step h. The returned error
/// is the larger of the two differences between the final tableau entry and
/// its neighbours of one order lower.
inline Extrapolated extrapolate_to_zero(std::span<const double> h, std::span<const cplx> y) {
    const std::size_t n = std::min(h.size(), y.size());
    if (n == 0) return {};
    if (n == 1) return {y[0], std::abs(y[0])};

    std::vector<std::vector<cplx>> t(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i) {
        t[i][0] = y[i];
        for (std::size_t k = 1; k <= i; ++k) {
            t[i][k] = t[i][k - 1] + (t[i][k - 1] - t[i - 1][k - 1]) * (h[i] / (h[i - k] - h[i]));
        }
    }
    const cplx best = t[n - 1][n - 1];
    const double err = std::max(std::abs(best - t[n - 1][n - 2]), std::abs(best - t[n - 2][n - 2]));
    return {best, err};
}

}  // namespace debranges
