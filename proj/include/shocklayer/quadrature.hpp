#pragma once

// Composite 5-point Gauss-Legendre quadrature with panel doubling. The nodes
// are interior to every panel, so integrands with an integrable endpoint
// singularity can be evaluated without touching the endpoint.

#include <array>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace shocklayer::quad {

struct Rule5 {
    static constexpr std::array<double, 5> nodes = {
        -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
        0.5384693101056830910363144, 0.9061798459386639927976269};
    static constexpr std::array<double, 5> weights = {
        0.2369268850561890875142640, 0.4786286704993664680412915, 0.5688888888888888888888889,
        0.4786286704993664680412915, 0.2369268850561890875142640};
};

template <class F>
double gauss_legendre5(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t k = 0; k < 5; ++k)
        sum += Rule5::weights[k] * f(mid + half * Rule5::nodes[k]);
    return half * sum;
}

template <class F>
double composite_gauss_legendre5(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + h * i;
        const double hi = (i + 1 == panels) ? b : lo + h;
        sum += gauss_legendre5(f, lo, hi);
    }
    return sum;
}

struct Options {
    int initial_panels = 16;
    int max_panels = 1024;
    double rel_tol = 1e-8;
    double abs_tol = 1e-15;
};

struct Result {
    double value = 0.0;
    int panels = 0;
};

/// Doubles the panel count until successive estimates agree to rel_tol.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
    int n = opt.initial_panels;
    double prev = composite_gauss_legendre5(f, a, b, n);
    while (2 * n <= opt.max_panels) {
        n *= 2;
        const double cur = composite_gauss_legendre5(f, a, b, n);
        if (std::abs(cur - prev) <= opt.rel_tol * std::abs(cur) + opt.abs_tol)
            return {cur, n};
        prev = cur;
    }
    throw NonConvergence("quadrature did not converge within " +
                         std::to_string(opt.max_panels) + " panels");
}

} // namespace shocklayer::quad
