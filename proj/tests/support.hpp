#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "debranges/types.hpp"

namespace testing_support {

using debranges::cplx;

/// Deterministic sample generator; every property test owns one with a fixed seed.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    cplx complex(double lo, double hi) { return {real(lo, hi), real(lo, hi)}; }
    cplx upper(double re, double im_lo, double im_hi) { return {real(-re, re), real(im_lo, im_hi)}; }

    std::vector<double> reals(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (double& x : v) x = real(lo, hi);
        return v;
    }
    std::vector<cplx> complexes(std::size_t n, double lo, double hi) {
        std::vector<cplx> v(n);
        for (cplx& z : v) z = complex(lo, hi);
        return v;
    }

private:
    std::mt19937_64 rng_;
};

inline std::vector<double> integers(int lo, int hi, double shift = 0.0) {
    std::vector<double> v;
    for (int k = lo; k <= hi; ++k) v.push_back(k + shift);
    return v;
}

}  // namespace testing_support
