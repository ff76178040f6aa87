#pragma once

// Shock-layer solution on streamlines for a prescribed shock.
//
// For a station N on the shock the layer is swept in the stream function psi
// from the shock (psi = psi_hat) down to the body (psi = 0). Each streamline
// carries the entropy it acquired where it crossed the shock at S, which for a
// perfect gas is fully described by the shock angle beta* there. The pressure
// follows from a first integral in psi and the shock distance y from a second
// integral that needs the pressure at every node of its own quadrature.

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"
#include "gas_dynamics.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "shock_geometry.hpp"

namespace shocklayer {

struct LayerSample {
    double psi = 0.0;
    double beta_star = 0.0;
    double p = 0.0;
    double rho = 0.0;
    double u = 0.0;
    double y_cap = 0.0; // Y integral
    double y = 0.0;     // distance from the shock along its normal
    double z = 0.0;
    double r = 0.0;
};

struct StationSolution {
    ShockStation station;
    std::vector<LayerSample> samples; // psi descending from psi_hat to 0
};

struct BodyPoint {
    double z = 0.0;
    double r = 0.0;
    double p_b = 0.0;
    double delta = 0.0; // shock-layer thickness along the station normal
};

struct LayerOptions {
    int n_stations = 200;
    int n_streamlines = 200;
    std::optional<double> r_max; // chosen so the body spans [0, R] when empty
    quad::Options quadrature{};
    int threads = 1;
};

/// Station radii used to extrapolate the on-axis body point.
inline constexpr double kAxisRichardsonFine = 5e-4;
inline constexpr double kAxisRichardsonCoarse = 1e-3;

namespace detail {

// Square root of the velocity bracket
//   cos^2 b* + (2/((g-1) M^2) + sin^2 b*) (1 - ratio^((g-1)/g)),
// where ratio = P sin^2(beta_hat) / (P_hat sin^2 b*).
inline double velocity_bracket(const FreestreamConditions& fs, double beta_star, double ratio) {
    const double g = fs.gamma;
    const double c = 2.0 / ((g - 1.0) * fs.mach * fs.mach);
    const double s = std::sin(beta_star);
    const double co = std::cos(beta_star);
    const double radicand = co * co + (c + s * s) * (1.0 - std::pow(ratio, (g - 1.0) / g));
    if (radicand < 0.0) {
        if (radicand < -1e-12)
            throw NegativeRadicand("velocity radicand " + std::to_string(radicand) +
                                   " < 0 (beta* below the station angle)");
        return 0.0;
    }
    return std::sqrt(radicand);
}

} // namespace detail

/// Streamline speed from the energy equation at pressure p on the streamline
/// that entered the shock at angle beta_star.
inline double u_at(const FreestreamConditions& fs, double beta_star, double p, double p_hat,
                   double beta_hat) {
    const double sh = std::sin(beta_hat);
    const double ss = std::sin(beta_star);
    return detail::velocity_bracket(fs, beta_star, p * sh * sh / (p_hat * ss * ss));
}

/// Isentropic density along the streamline from its post-shock state at S.
inline double density_at(const FreestreamConditions& fs, const ShockStation& station,
                         double beta_star, double p) {
    if (!(p > 0.0)) throw ValidationError("density requires p > 0");
    const double p_hat = post_shock_state(fs, station.beta_hat).p;
    const double sh = std::sin(station.beta_hat);
    const double ss = std::sin(beta_star);
    const double chi_star = inverse_compression_ratio(fs, beta_star);
    return std::pow(p * sh * sh / (p_hat * ss * ss), 1.0 / fs.gamma) / chi_star;
}

/// Shock distance from the Y integral. Plane flow: y = Y. Axisymmetric flow
/// solves y (1 - cos(beta_hat) y / (2 r_hat)) = Y / r_hat for the root that
/// vanishes with Y.
inline double y_from_y_integral(const ShockStation& st, double y_cap, int j) {
    if (j == 0) return y_cap;
    const double x = 2.0 * y_cap * std::cos(st.beta_hat) / (st.r_hat * st.r_hat);
    const double radicand = 1.0 - x;
    if (radicand < 0.0)
        throw NegativeRadicand("shock layer thicker than the axisymmetric limit at r = " +
                               std::to_string(st.r_hat));
    return 2.0 * y_cap / st.r_hat / (1.0 + std::sqrt(radicand));
}

/// Integrals of one station. The pressure integral is tabulated once per
/// station as cumulative panel sums; P at an arbitrary psi then costs one
/// partial panel.
class StationIntegrator {
public:
    StationIntegrator(const FreestreamConditions& fs, const ShockShape& shape,
                      const ShockStation& station, const quad::Options& opt = {})
        : fs_(fs), shape_(shape), st_(station), opt_(opt) {
        const auto hat = post_shock_state(fs, station.beta_hat);
        p_hat_ = hat.p;
        sin2_hat_ = std::sin(station.beta_hat) * std::sin(station.beta_hat);
        scale_ = station.kappa_hat / (fs.j() == 0 ? 1.0 : station.r_hat);
        tabulate_pressure_integral();
    }

    const ShockStation& station() const { return st_; }
    double p_hat() const { return p_hat_; }
    int pressure_panels() const { return static_cast<int>(cum_.size()) - 1; }

    /// Shock angle at the entry point of streamline psi.
    double beta_star(double psi) const {
        return shape_.angle_at_radius(radius_at_stream_function(psi, fs_.j()));
    }

    /// Pressure-integral integrand; depends on psi only through beta*.
    double pressure_integrand(double psi) const {
        const double bs = beta_star(psi);
        const double ss = std::sin(bs);
        return detail::velocity_bracket(fs_, bs, sin2_hat_ / (ss * ss));
    }

    /// Integral of the pressure integrand over [psi, psi_hat].
    double pressure_integral(double psi) const {
        check_psi(psi);
        if (psi >= st_.psi_hat) return 0.0;
        const int n = pressure_panels();
        const double h = st_.psi_hat / n;
        int i = std::clamp(static_cast<int>(psi / h), 0, n - 1);
        const double top = (i + 1 == n) ? st_.psi_hat : h * (i + 1);
        return cum_[static_cast<std::size_t>(i) + 1] +
               quad::gauss_legendre5([this](double s) { return pressure_integrand(s); }, psi,
                                     top);
    }

    double pressure(double psi) const { return p_hat_ - scale_ * pressure_integral(psi); }

    /// Integrand 1/(rho u) of the Y integral.
    double y_integrand(double psi) const {
        const double bs = beta_star(psi);
        const double p = pressure(psi);
        const double ss = std::sin(bs);
        const double ratio = p * sin2_hat_ / (p_hat_ * ss * ss);
        const double chi_star = inverse_compression_ratio(fs_, bs);
        const double rho = std::pow(ratio, 1.0 / fs_.gamma) / chi_star;
        const double u = detail::velocity_bracket(fs_, bs, ratio);
        return 1.0 / (rho * u);
    }

    /// Y at every entry of a grid descending from psi_hat to >= 0.
    /// Panels are aligned with the grid; their count doubles until every
    /// value changes by less than the relative tolerance.
    std::vector<double> y_integral(const std::vector<double>& grid) const {
        if (grid.empty()) return {};
        if (grid.front() != st_.psi_hat)
            throw ValidationError("psi grid must start at psi_hat");
        for (std::size_t k = 1; k < grid.size(); ++k)
            if (!(grid[k] < grid[k - 1]) || grid[k] < 0.0)
                throw ValidationError("psi grid must be strictly descending and >= 0");
        const int intervals = static_cast<int>(grid.size()) - 1;
        if (intervals == 0) return {0.0};

        const int start = std::max(1, (opt_.initial_panels + intervals - 1) / intervals);
        const int cap = std::max(2 * start, opt_.max_panels / intervals);
        auto f = [this](double s) { return y_integrand(s); };

        auto evaluate = [&](int m) {
            std::vector<double> y(grid.size(), 0.0);
            for (std::size_t k = 1; k < grid.size(); ++k)
                y[k] = y[k - 1] + quad::composite_gauss_legendre5(f, grid[k], grid[k - 1], m);
            return y;
        };

        int m = start;
        auto prev = evaluate(m);
        while (2 * m <= cap) {
            m *= 2;
            auto cur = evaluate(m);
            bool converged = true;
            for (std::size_t k = 0; k < cur.size() && converged; ++k)
                converged = std::abs(cur[k] - prev[k]) <= opt_.rel_tol * std::abs(cur[k]) +
                                                              opt_.abs_tol;
            if (converged) return cur;
            prev = std::move(cur);
        }
        throw NonConvergence("Y integral did not converge at r = " + std::to_string(st_.r_hat));
    }

private:
    void check_psi(double psi) const {
        if (!(psi >= 0.0) || psi > st_.psi_hat * (1.0 + 1e-14))
            throw OutOfDomain("psi outside [0, psi_hat]");
    }

    void tabulate_pressure_integral() {
        auto f = [this](double s) { return pressure_integrand(s); };
        auto panel_sums = [&](int n) {
            // cum[i] = integral over [i h, psi_hat]
            std::vector<double> cum(static_cast<std::size_t>(n) + 1, 0.0);
            const double h = st_.psi_hat / n;
            for (int i = n - 1; i >= 0; --i) {
                const double top = (i + 1 == n) ? st_.psi_hat : h * (i + 1);
                cum[static_cast<std::size_t>(i)] =
                    cum[static_cast<std::size_t>(i) + 1] + quad::gauss_legendre5(f, h * i, top);
            }
            return cum;
        };
        if (st_.psi_hat == 0.0) {
            cum_.assign(2, 0.0);
            return;
        }
        int n = opt_.initial_panels;
        auto prev = panel_sums(n);
        while (2 * n <= opt_.max_panels) {
            n *= 2;
            auto cur = panel_sums(n);
            if (std::abs(cur[0] - prev[0]) <= opt_.rel_tol * std::abs(cur[0]) + opt_.abs_tol) {
                cum_ = std::move(cur);
                return;
            }
            prev = std::move(cur);
        }
        throw NonConvergence("pressure integral did not converge at r = " +
                             std::to_string(st_.r_hat));
    }

    FreestreamConditions fs_;
    const ShockShape& shape_;
    ShockStation st_;
    quad::Options opt_;
    double p_hat_ = 0.0;
    double sin2_hat_ = 0.0;
    double scale_ = 0.0; // kappa_hat / r_hat^j
    std::vector<double> cum_;
};

/// Pressure on streamline psi at station N.
inline double pressure_at(const FreestreamConditions& fs, const ShockShape& shape,
                          const ShockStation& station, double psi,
                          const quad::Options& opt = {}) {
    return StationIntegrator(fs, shape, station, opt).pressure(psi);
}

struct YSample {
    double psi;
    double y_cap;
    double y;
};

/// Y integral and shock distance on a psi grid descending from psi_hat.
inline std::vector<YSample> y_profile(const FreestreamConditions& fs, const ShockShape& shape,
                                      const ShockStation& station,
                                      const std::vector<double>& psi_grid,
                                      const quad::Options& opt = {}) {
    const StationIntegrator integ(fs, shape, station, opt);
    const auto ys = integ.y_integral(psi_grid);
    std::vector<YSample> out;
    out.reserve(ys.size());
    for (std::size_t k = 0; k < ys.size(); ++k)
        out.push_back({psi_grid[k], ys[k], y_from_y_integral(station, ys[k], fs.j())});
    return out;
}

/// Uniform grid of n values from psi_hat down to exactly 0.
inline std::vector<double> psi_grid(double psi_hat, int n) {
    if (n < 2) throw ValidationError("need at least 2 streamlines");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        g[static_cast<std::size_t>(k)] = psi_hat * (1.0 - double(k) / (n - 1));
    g.back() = 0.0;
    return g;
}

inline StationSolution solve_station(const FreestreamConditions& fs, const ShockShape& shape,
                                     const ShockStation& station, int n_streamlines,
                                     const quad::Options& opt = {}) {
    const StationIntegrator integ(fs, shape, station, opt);
    const auto grid = psi_grid(station.psi_hat, n_streamlines);
    const auto ys = integ.y_integral(grid);
    const double sb = std::sin(station.beta_hat);
    const double cb = std::cos(station.beta_hat);

    StationSolution sol;
    sol.station = station;
    sol.samples.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        LayerSample s;
        s.psi = grid[k];
        s.beta_star = integ.beta_star(s.psi);
        s.p = k == 0 ? integ.p_hat() : integ.pressure(s.psi);
        s.rho = density_at(fs, station, s.beta_star, s.p);
        s.u = u_at(fs, s.beta_star, s.p, integ.p_hat(), station.beta_hat);
        s.y_cap = ys[k];
        s.y = y_from_y_integral(station, ys[k], fs.j());
        s.z = station.z_hat + s.y * sb;
        s.r = station.r_hat - s.y * cb;
        sol.samples.push_back(s);
    }
    return sol;
}

/// Body point (psi = 0) produced by one station.
inline BodyPoint body_point(const FreestreamConditions& fs, const ShockShape& shape,
                            const ShockStation& station, const quad::Options& opt = {}) {
    const StationIntegrator integ(fs, shape, station, opt);
    const double y_cap = integ.y_integral({station.psi_hat, 0.0}).back();
    BodyPoint b;
    b.delta = y_from_y_integral(station, y_cap, fs.j());
    b.p_b = integ.pressure(0.0);
    b.z = station.z_hat + b.delta * std::sin(station.beta_hat);
    b.r = station.r_hat - b.delta * std::cos(station.beta_hat);
    return b;
}

/// On-axis body point: standoff and stagnation pressure extrapolated from two
/// near-axis stations, assuming an even expansion in r_hat.
inline BodyPoint axis_body_point(const FreestreamConditions& fs, const ShockShape& shape,
                                 const quad::Options& opt = {}) {
    const auto fine = body_point(fs, shape, shape.station_at_radius(kAxisRichardsonFine, fs.j()), opt);
    const auto coarse =
        body_point(fs, shape, shape.station_at_radius(kAxisRichardsonCoarse, fs.j()), opt);
    const double ratio2 = (kAxisRichardsonCoarse / kAxisRichardsonFine) *
                          (kAxisRichardsonCoarse / kAxisRichardsonFine);
    auto extrapolate = [&](double f, double c) { return (ratio2 * f - c) / (ratio2 - 1.0); };
    BodyPoint b;
    b.delta = extrapolate(fine.delta, coarse.delta);
    b.p_b = extrapolate(fine.p_b, coarse.p_b);
    b.z = b.delta;
    b.r = 0.0;
    return b;
}

/// Station radius whose body point reaches r in [R, R + 1e-3]. The body
/// radius rises with the station radius, peaks and falls again for shocks
/// that open too slowly, so the first crossing is bracketed by a forward scan.
inline double find_r_max(const FreestreamConditions& fs, const ShockShape& shape,
                         const quad::Options& opt = {}) {
    const double target = fs.body_radius;
    constexpr double band = 1e-3;
    auto body_r = [&](double r_hat) {
        return body_point(fs, shape, shape.station_at_radius(r_hat, fs.j()), opt).r;
    };
    const double step = 0.1 * target;
    double lo = target;
    double hi = target;
    double prev_r = body_r(lo);
    for (;;) {
        hi = std::min(hi + step, shape.max_radius());
        const double r = body_r(hi);
        if (r >= target) break;
        if (r <= prev_r || hi >= shape.max_radius() || hi > 20.0 * target)
            throw OutOfDomain("recovered body never reaches r = " + std::to_string(target));
        prev_r = r;
        lo = hi;
    }
    // Bisect the crossing tightly rather than stopping anywhere in the band so
    // that r_max, and every objective built on the body, varies smoothly with
    // the shock parameters.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r = body_r(mid);
        if (r < target) lo = mid; else hi = mid;
        if (hi - lo <= 1e-12 * hi) {
            const double r_hi = body_r(hi);
            if (r_hi >= target && r_hi <= target + band) return hi;
            break;
        }
    }
    throw NonConvergence("could not bracket the body radius");
}

/// Body polyline: the extrapolated axis point followed by one point per
/// station.
inline std::vector<BodyPoint> body_shape(const FreestreamConditions& fs, const ShockShape& shape,
                                         const LayerOptions& opt = {}) {
    const double r_max = opt.r_max ? *opt.r_max : find_r_max(fs, shape, opt.quadrature);
    const auto stations = sample_stations(shape, fs, opt.n_stations, r_max);
    std::vector<BodyPoint> body(stations.size() + 1);
    body[0] = axis_body_point(fs, shape, opt.quadrature);
    parallel_for(stations.size(), opt.threads, [&](std::size_t i) {
        body[i + 1] = body_point(fs, shape, stations[i], opt.quadrature);
    });
    return body;
}

/// Line integral of the body pressure along the polyline (trapezoidal rule).
inline double integrated_surface_pressure(const std::vector<BodyPoint>& body) {
    if (body.size() < 2) throw DegenerateInput("need at least 2 body points");
    // Neumaier-compensated so the result does not depend on traversal direction.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 1; i < body.size(); ++i) {
        const double dl = std::hypot(body[i].z - body[i - 1].z, body[i].r - body[i - 1].r);
        const double term = 0.5 * (body[i].p_b + body[i - 1].p_b) * dl;
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

struct FieldSolution {
    double r_max = 0.0;
    std::vector<StationSolution> stations;
    std::vector<BodyPoint> body; // axis point first
};

/// Full shock-layer field plus the body it implies.
inline FieldSolution solve_field(const FreestreamConditions& fs, const ShockShape& shape,
                                 const LayerOptions& opt = {}) {
    fs.validate();
    FieldSolution out;
    out.r_max = opt.r_max ? *opt.r_max : find_r_max(fs, shape, opt.quadrature);
    const auto stations = sample_stations(shape, fs, opt.n_stations, out.r_max);
    out.stations.resize(stations.size());
    parallel_for(stations.size(), opt.threads, [&](std::size_t i) {
        out.stations[i] = solve_station(fs, shape, stations[i], opt.n_streamlines, opt.quadrature);
    });
    out.body.reserve(stations.size() + 1);
    out.body.push_back(axis_body_point(fs, shape, opt.quadrature));
    for (const auto& s : out.stations) {
        const auto& last = s.samples.back();
        out.body.push_back({last.z, last.r, last.p, last.y});
    }
    return out;
}

inline void write_field_csv(std::ostream& out, const std::vector<StationSolution>& stations) {
    out << "station,z,r,psi,p,rho,u,y\n";
    for (std::size_t i = 0; i < stations.size(); ++i)
        for (const auto& s : stations[i].samples)
            csv::write_row(out, {double(i), s.z, s.r, s.psi, s.p, s.rho, s.u, s.y});
}

inline void write_body_csv(std::ostream& out, const std::vector<BodyPoint>& body) {
    out << "z,r,p_b,delta\n";
    for (const auto& b : body) csv::write_row(out, {b.z, b.r, b.p_b, b.delta});
}

} // namespace shocklayer
