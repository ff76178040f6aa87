#pragma once

// Fits shock-shape parameters so the recovered body matches the true body:
// a circle (plane flow) or sphere section (axisymmetric flow) of radius R
// whose nose touches the extrapolated stagnation point.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "gas_dynamics.hpp"
#include "shock_geometry.hpp"
#include "stream_solver.hpp"

namespace shocklayer {

struct BodyError {
    double rms = 0.0;
    double max_abs = 0.0;
    double center_z = 0.0;
};

struct OptimizationResult {
    std::vector<double> params; // z0, c1..cd
    BodyError error;
    int evaluations = 0;
    bool converged = false;
};

/// Residuals (distance to center) - R over every body point, with the center
/// on the axis at standoff + R.
inline BodyError body_error_of(const std::vector<BodyPoint>& body, double radius) {
    if (body.empty()) throw DegenerateInput("empty body");
    BodyError e;
    e.center_z = body.front().delta + radius;
    double sum2 = 0.0;
    for (const auto& b : body) {
        const double res = std::hypot(b.z - e.center_z, b.r) - radius;
        sum2 += res * res;
        e.max_abs = std::max(e.max_abs, std::abs(res));
    }
    e.rms = std::sqrt(sum2 / double(body.size()));
    return e;
}

inline BodyError body_error(const FreestreamConditions& fs, const ShockShape& shape,
                            const LayerOptions& opt = {}) {
    return body_error_of(body_shape(fs, shape, opt), fs.body_radius);
}

// ---------------------------------------------------------------------------
// Scalar minimization: secant iteration on a central-difference derivative.

struct SecantOptions {
    double rel_step = 1e-3;  // derivative step relative to x
    double rel_tol = 1e-4;   // stop when |dx| < rel_tol |x|
    double first_move = 1e-2; // relative offset of the second starting point
    double fallback_step = 0.1; // relative descent step where the secant fails
    int max_iterations = 50;
};

struct ScalarMinimum {
    double x = 0.0;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    int iterations = 0;
    bool converged = false;
};

template <class F>
ScalarMinimum secant_minimize(F&& f, double x0, const SecantOptions& opt = {}) {
    ScalarMinimum best;
    best.x = x0;
    auto sample = [&](double x) {
        const double v = f(x);
        ++best.evaluations;
        if (v < best.value) {
            best.value = v;
            best.x = x;
        }
        return v;
    };
    auto derivative = [&](double x) {
        const double h = opt.rel_step * std::max(std::abs(x), 1e-12);
        sample(x);
        return (sample(x + h) - sample(x - h)) / (2.0 * h);
    };

    double x_prev = x0;
    double d_prev = derivative(x_prev);
    double x = x0 * (1.0 + opt.first_move);
    if (x == x0) x = x0 + opt.first_move;
    for (int it = 1; it <= opt.max_iterations; ++it) {
        best.iterations = it;
        const double d = derivative(x);
        if (!std::isfinite(d) || !std::isfinite(d_prev)) {
            // Step back toward the last usable point.
            const double mid = 0.5 * (x + x_prev);
            x = mid;
            continue;
        }
        if (d == d_prev) {
            best.converged = std::abs(x - x_prev) < opt.rel_tol * std::abs(x);
            break;
        }
        double next = x - d * (x - x_prev) / (d - d_prev);
        // Where the derivative is not increasing the secant step heads uphill;
        // fall back to a bounded descent step.
        if ((d - d_prev) / (x - x_prev) <= 0.0)
            next = x - std::copysign(opt.fallback_step * std::abs(x), d);
        if (x0 > 0.0 && next <= 0.0) next = 0.5 * x;
        x_prev = x;
        d_prev = d;
        const double dx = next - x;
        x = next;
        if (std::abs(dx) < opt.rel_tol * std::abs(x)) {
            sample(x);
            best.converged = true;
            break;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Nelder-Mead simplex.

struct NelderMeadOptions {
    double initial_scale = 1e-2; // relative simplex edge per coordinate
    double zero_step = 1e-2;     // absolute edge for coordinates that start at 0
    double x_tol = 1e-6;         // relative simplex diameter
    double f_tol = 1e-10;        // spread of objective values
    int max_evaluations = 2000;
};

struct SimplexMinimum {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
    bool converged = false;
};

template <class F>
SimplexMinimum nelder_mead(F&& f, const std::vector<double>& x0,
                           const NelderMeadOptions& opt = {}) {
    const std::size_t n = x0.size();
    SimplexMinimum out;
    auto eval = [&](const std::vector<double>& x) {
        ++out.evaluations;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i)
        pts[i + 1][i] += x0[i] != 0.0 ? opt.initial_scale * x0[i] : opt.zero_step;
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        // Stable on ties keeps the run deterministic.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> v2;
        for (auto i : order) {
            p2.push_back(pts[i]);
            v2.push_back(vals[i]);
        }
        pts = std::move(p2);
        vals = std::move(v2);
    };
    auto converged = [&] {
        if (!(vals[n] - vals[0] <= opt.f_tol)) return false;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const double scale = std::max(std::abs(pts[0][k]), 1e-3);
                if (std::abs(pts[i][k] - pts[0][k]) > opt.x_tol * scale) return false;
            }
        return true;
    };
    auto affine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
        std::vector<double> r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = a[k] + t * (b[k] - a[k]);
        return r;
    };

    sort_simplex();
    while (!converged()) {
        if (out.evaluations >= opt.max_evaluations) break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / double(n);

        const auto xr = affine(centroid, pts[n], -1.0);
        const double fr = eval(xr);
        if (fr < vals[0]) {
            const auto xe = affine(centroid, pts[n], -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            pts[n] = xr;
            vals[n] = fr;
        } else {
            const bool outside = fr < vals[n];
            const auto xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, pts[n], 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : vals[n])) {
                pts[n] = xc;
                vals[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    pts[i] = affine(pts[0], pts[i], 0.5);
                    vals[i] = eval(pts[i]);
                }
            }
        }
        sort_simplex();
    }
    out.converged = converged();
    out.x = pts[0];
    out.value = vals[0];
    return out;
}

// ---------------------------------------------------------------------------
// Shock-shape fits.

struct OptimizerOptions {
    LayerOptions layer{};
    SecantOptions secant{};
    NelderMeadOptions simplex{};
    // Jointly fitting z0 with the coefficients is ill-posed: for z << z0 the
    // family collapses to r ~ A sqrt(z) + B z and the simplex walks off along
    // z0 -> infinity. By default the coefficients are fitted at fixed z0.
    bool free_z0 = false;
};

/// Builds the analytic shape for a parameter vector (z0, c1..cd); a single
/// entry means the Moeckel hyperbola.
inline ShockShape shape_from_params(double mach, const std::vector<double>& params) {
    if (params.empty()) throw ValidationError("empty shape parameter vector");
    if (params.size() == 1) return ShockShape::moeckel(mach, params[0]);
    return ShockShape::poly(mach, params[0], {params.begin() + 1, params.end()});
}

/// rms body error, or +inf when the shape is infeasible.
inline double body_objective(const FreestreamConditions& fs, const std::vector<double>& params,
                             const LayerOptions& layer) {
    try {
        return body_error(fs, shape_from_params(fs.mach, params), layer).rms;
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

/// Initial vertex parameter: a shock nose radius of about 2.4 body radii.
inline double default_z0(const FreestreamConditions& fs) {
    return 2.4 * fs.body_radius * (fs.mach * fs.mach - 1.0);
}

inline OptimizationResult optimize_z0(const FreestreamConditions& fs, double z0_init,
                                      const OptimizerOptions& opt = {}) {
    fs.validate();
    if (!(z0_init > 0.0)) throw ValidationError("z0_init must be > 0");
    const auto m = secant_minimize(
        [&](double z0) { return z0 > 0.0 ? body_objective(fs, {z0}, opt.layer)
                                         : std::numeric_limits<double>::infinity(); },
        z0_init, opt.secant);
    OptimizationResult r;
    r.params = {m.x};
    r.evaluations = m.evaluations;
    r.converged = m.converged;
    r.error = body_error(fs, ShockShape::moeckel(fs.mach, m.x), opt.layer);
    return r;
}

/// Fits the polynomial-in-f coefficients (and z0 when free_z0 is set) with
/// Nelder-Mead, starting from init = (z0, c1..cd).
inline OptimizationResult optimize_poly(const FreestreamConditions& fs, int degree,
                                        const std::vector<double>& init,
                                        const OptimizerOptions& opt = {}) {
    fs.validate();
    if (degree < 2 || degree > 4) throw ValidationError("polynomial degree must be 2, 3 or 4");
    if (init.size() != static_cast<std::size_t>(degree) + 1)
        throw ValidationError("initial guess needs z0 and " + std::to_string(degree) +
                              " coefficients");
    if (!(init[0] > 0.0) || !(init[1] > 0.0))
        throw ValidationError("initial guess must have z0 > 0 and c1 > 0");
    const double z0 = init[0];
    const std::size_t skip = opt.free_z0 ? 0 : 1;
    auto full = [&](const std::vector<double>& x) {
        if (opt.free_z0) return x;
        std::vector<double> p{z0};
        p.insert(p.end(), x.begin(), x.end());
        return p;
    };
    const auto m = nelder_mead(
        [&](const std::vector<double>& x) {
            const auto p = full(x);
            if (!(p[0] > 0.0) || !(p[1] > 0.0)) return std::numeric_limits<double>::infinity();
            return body_objective(fs, p, opt.layer);
        },
        std::vector<double>(init.begin() + static_cast<std::ptrdiff_t>(skip), init.end()),
        opt.simplex);
    OptimizationResult r;
    r.params = full(m.x);
    r.evaluations = m.evaluations;
    r.converged = m.converged;
    r.error = body_error(fs, shape_from_params(fs.mach, r.params), opt.layer);
    return r;
}

/// Optimized shapes of increasing degree: entry 0 is the Moeckel fit r = f
/// from the secant search; each polynomial fit starts from the previous
/// optimum with a zero leading-order term appended.
inline std::vector<OptimizationResult> optimize_families(const FreestreamConditions& fs,
                                                         int max_degree,
                                                         const OptimizerOptions& opt = {}) {
    if (max_degree < 1 || max_degree > 4) throw ValidationError("degree must be 1 to 4");
    std::vector<OptimizationResult> out;
    out.push_back(optimize_z0(fs, default_z0(fs), opt));
    for (int d = 2; d <= max_degree; ++d) {
        auto init = out.back().params;
        if (init.size() == 1) init.push_back(1.0);
        init.push_back(0.0);
        out.push_back(optimize_poly(fs, d, init, opt));
    }
    return out;
}

} // namespace shocklayer
