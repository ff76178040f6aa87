#pragma once

// Bow-shock shape families and their differential geometry.
//
// The analytic families are parameterized by the Moeckel hyperbola variable
//   f = sqrt((z + z0)^2 - z0^2) / sqrt(M^2 - 1),
// with r = f (Moeckel) or r = c1 f + c2 f^2 + ... (polynomial in f). Splines
// store z as a function of r, mirrored about the axis so the vertex is smooth.
// The shock vertex sits at the origin and the freestream points along +z.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"
#include "gas_dynamics.hpp"
#include "spline.hpp"

namespace shocklayer {

/// One point N on the shock.
struct ShockStation {
    double z_hat = 0.0;
    double r_hat = 0.0;
    double beta_hat = 0.0;  // arctan(dr/dz), pi/2 at the vertex
    double kappa_hat = 0.0; // curvature, positive for the concave side facing the body
    double psi_hat = 0.0;   // r^(1+j) / (1+j)
};

/// Axis offset of the first sampled station.
inline constexpr double kAxisOffset = 1e-3;

inline double stream_function_at_radius(double r, int j) {
    return j == 0 ? r : 0.5 * r * r;
}

inline double radius_at_stream_function(double psi, int j) {
    return j == 0 ? psi : std::sqrt(2.0 * psi);
}

enum class ShapeFamily { moeckel, poly, spline };

class ShockShape {
public:
    struct Moeckel {
        double z0;
    };
    struct PolyInF {
        double z0;
        std::vector<double> coeffs; // c1..cd
    };
    struct Spline {
        NaturalCubicSpline z_of_r; // mirrored, knots on [-r_max, r_max]
        double r_max;
        double z_max;
    };

    static ShockShape moeckel(double mach, double z0) {
        if (!(z0 > 0.0)) throw ValidationError("z0 must be > 0");
        if (!(mach > 1.0)) throw ValidationError("mach must be > 1");
        return ShockShape(Moeckel{z0}, std::sqrt(mach * mach - 1.0));
    }

    static ShockShape poly(double mach, double z0, std::vector<double> coeffs) {
        if (!(z0 > 0.0)) throw ValidationError("z0 must be > 0");
        if (!(mach > 1.0)) throw ValidationError("mach must be > 1");
        if (coeffs.empty() || coeffs.size() > 4)
            throw ValidationError("polynomial shock needs 1 to 4 coefficients");
        if (!(coeffs.front() > 0.0)) throw ValidationError("leading coefficient must be > 0");
        return ShockShape(PolyInF{z0, std::move(coeffs)}, std::sqrt(mach * mach - 1.0));
    }

    /// Natural cubic spline through (z, r) points, translated so the first
    /// point is the vertex at the origin.
    static ShockShape spline(std::vector<std::pair<double, double>> points) {
        if (points.size() < 4) throw DegenerateInput("spline shock needs at least 4 points");
        const auto [z_first, r_first] = points.front();
        std::vector<double> rs, zs;
        rs.reserve(2 * points.size() - 1);
        zs.reserve(2 * points.size() - 1);
        for (std::size_t i = points.size() - 1; i >= 1; --i) {
            rs.push_back(-(points[i].second - r_first));
            zs.push_back(points[i].first - z_first);
        }
        for (const auto& [z, r] : points) {
            rs.push_back(r - r_first);
            zs.push_back(z - z_first);
        }
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (!(points[i].first > points[i - 1].first))
                throw DegenerateInput("spline shock z values must be strictly increasing");
            if (!(points[i].second > points[i - 1].second))
                throw DegenerateInput("spline shock r values must be strictly increasing");
        }
        Spline s{NaturalCubicSpline(rs, zs), rs.back(), zs.back()};
        return ShockShape(std::move(s), 0.0);
    }

    ShapeFamily family() const {
        return static_cast<ShapeFamily>(shape_.index());
    }

    /// (z0, c1..cd) for analytic families; empty for splines.
    std::vector<double> params() const {
        if (auto* m = std::get_if<Moeckel>(&shape_)) return {m->z0};
        if (auto* p = std::get_if<PolyInF>(&shape_)) {
            std::vector<double> out{p->z0};
            out.insert(out.end(), p->coeffs.begin(), p->coeffs.end());
            return out;
        }
        return {};
    }

    double beta_m() const { return beta_m_; }

    double max_radius() const {
        if (auto* s = std::get_if<Spline>(&shape_)) return s->r_max;
        return std::numeric_limits<double>::infinity();
    }

    double max_z() const {
        if (auto* s = std::get_if<Spline>(&shape_)) return s->z_max;
        return std::numeric_limits<double>::infinity();
    }

    const Spline* spline_data() const { return std::get_if<Spline>(&shape_); }

    /// Shock radius at axial distance z behind the vertex.
    double radius_at(double z) const {
        check_z(z);
        if (auto* s = std::get_if<Spline>(&shape_)) return spline_radius_at(*s, z);
        return point(f_at_z(z)).r;
    }

    /// dr/dz; infinite at the vertex.
    double slope_at(double z) const {
        const auto p = point(param_at_z(z));
        return p.dr / p.dz;
    }

    ShockStation station_at(double z, int j) const {
        return station_from(point(param_at_z(z)), j);
    }

    ShockStation station_at_radius(double r, int j) const {
        return station_from(point(param_at_radius(r)), j);
    }

    /// Shock angle where the shock has radius r. Hot path of the layer
    /// integrals, so it skips the curvature.
    double angle_at_radius(double r) const {
        auto p = point(param_at_radius(r));
        check_slope(p);
        return std::atan2(p.dr, p.dz);
    }

private:
    using Variant = std::variant<Moeckel, PolyInF, Spline>;

    ShockShape(Variant v, double beta_m) : shape_(std::move(v)), beta_m_(beta_m) {}

    // Curve point and derivatives with respect to the family parameter t.
    struct CurvePoint {
        double z, r, dz, dr, d2z, d2r;
    };

    void check_z(double z) const {
        if (!(z >= 0.0)) throw OutOfDomain("shock queried at z < 0");
        if (z > max_z() * (1.0 + 1e-14)) throw OutOfDomain("shock queried beyond spline range");
    }

    void check_r(double r) const {
        if (!(r >= 0.0)) throw OutOfDomain("shock queried at r < 0");
        if (r > max_radius() * (1.0 + 1e-14))
            throw OutOfDomain("shock queried beyond spline range");
    }

    // The mirrored spline gives dz/dr = 0 at the vertex only up to rounding.
    static void check_slope(CurvePoint& p) {
        if (!(p.dr > 0.0) || !(p.dz >= -1e-12))
            throw InvalidShape("shock radius is not monotone in z");
        p.dz = std::max(p.dz, 0.0);
    }

    double f_at_z(double z) const {
        const double z0 = std::holds_alternative<Moeckel>(shape_) ? std::get<Moeckel>(shape_).z0
                                                                   : std::get<PolyInF>(shape_).z0;
        return std::sqrt(z * (z + 2.0 * z0)) / beta_m_;
    }

    double param_at_z(double z) const {
        check_z(z);
        if (auto* s = std::get_if<Spline>(&shape_)) return spline_radius_at(*s, z);
        return f_at_z(z);
    }

    double param_at_radius(double r) const {
        check_r(r);
        if (auto* p = std::get_if<PolyInF>(&shape_)) return poly_f_at_radius(*p, r);
        return std::min(r, max_radius());
    }

    static double poly_value(const PolyInF& p, double t) {
        double v = 0.0;
        for (std::size_t k = p.coeffs.size(); k-- > 0;) v = (v + p.coeffs[k]) * t;
        return v;
    }

    static double poly_derivative(const PolyInF& p, double t) {
        double v = 0.0;
        for (std::size_t k = p.coeffs.size(); k-- > 0;) v = v * t + (k + 1) * p.coeffs[k];
        return v;
    }

    // Safeguarded Newton for c1 f + c2 f^2 + ... = r on the monotone branch.
    static double poly_f_at_radius(const PolyInF& p, double r) {
        if (r == 0.0) return 0.0;
        double lo = 0.0;
        double hi = r / p.coeffs.front();
        for (int k = 0; poly_value(p, hi) < r; ++k) {
            if (k > 60 || !(poly_derivative(p, hi) > 0.0))
                throw InvalidShape("polynomial shock does not reach r = " + std::to_string(r));
            hi *= 2.0;
        }
        double t = std::min(r / p.coeffs.front(), hi);
        for (int it = 0; it < 100; ++it) {
            const double g = poly_value(p, t) - r;
            if (g > 0.0) hi = t; else lo = t;
            const double dg = poly_derivative(p, t);
            double next = dg > 0.0 ? t - g / dg : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - t) <= 1e-15 * t || hi - lo <= 1e-15 * hi) return next;
            t = next;
        }
        return t;
    }

    static double spline_radius_at(const Spline& s, double z) {
        if (z == 0.0) return 0.0;
        // z(r) is increasing on [0, r_max]; bisection then Newton polish.
        double lo = 0.0, hi = s.r_max;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (s.z_of_r.value(mid) < z) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    }

    CurvePoint point(double t) const {
        if (auto* s = std::get_if<Spline>(&shape_)) {
            return {s->z_of_r.value(t), t, s->z_of_r.derivative(t), 1.0,
                    s->z_of_r.second_derivative(t), 0.0};
        }
        double z0;
        double r, dr, d2r;
        if (auto* m = std::get_if<Moeckel>(&shape_)) {
            z0 = m->z0;
            r = t;
            dr = 1.0;
            d2r = 0.0;
        } else {
            const auto& p = std::get<PolyInF>(shape_);
            z0 = p.z0;
            r = poly_value(p, t);
            dr = poly_derivative(p, t);
            d2r = 0.0;
            for (std::size_t k = p.coeffs.size(); k-- > 1;)
                d2r = d2r * t + double((k + 1) * k) * p.coeffs[k];
        }
        const double b2 = beta_m_ * beta_m_;
        const double root = std::sqrt(z0 * z0 + b2 * t * t); // z + z0
        const double z = b2 * t * t / (root + z0);
        const double dz = b2 * t / root;
        const double d2z = b2 * z0 * z0 / (root * root * root);
        return {z, r, dz, dr, d2z, d2r};
    }

    ShockStation station_from(CurvePoint p, int j) const {
        check_slope(p);
        ShockStation st;
        st.z_hat = p.z;
        st.r_hat = p.r;
        st.beta_hat = std::atan2(p.dr, p.dz);
        const double speed2 = p.dz * p.dz + p.dr * p.dr;
        st.kappa_hat = std::abs(p.dz * p.d2r - p.dr * p.d2z) / (speed2 * std::sqrt(speed2));
        st.psi_hat = stream_function_at_radius(p.r, j);
        return st;
    }

    Variant shape_;
    double beta_m_;
};

/// Station at axial position z (free-function form of ShockShape::station_at).
inline ShockStation station_at(const ShockShape& shape, double z, int j) {
    return shape.station_at(z, j);
}

inline ShockShape fit_spline_shock(std::vector<std::pair<double, double>> points) {
    return ShockShape::spline(std::move(points));
}

/// Reads a `z,r` CSV and fits a spline shock to it.
inline ShockShape load_spline_shock(const std::string& path) {
    const auto table = csv::read_file(path);
    const auto zc = table.column("z");
    const auto rc = table.column("r");
    if (!zc || !rc) throw ParseError("spline file needs a 'z,r' header", 1);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(table.rows.size());
    for (const auto& row : table.rows) pts.emplace_back(row[*zc], row[*rc]);
    return fit_spline_shock(std::move(pts));
}

/// n stations with r uniformly spaced on [kAxisOffset, r_max]; the shock
/// angle must strictly decrease along the list.
inline std::vector<ShockStation> sample_stations(const ShockShape& shape,
                                                 const FreestreamConditions& fs, int n,
                                                 double r_max) {
    if (n < 2) throw ValidationError("need at least 2 stations");
    if (!(r_max > kAxisOffset)) throw ValidationError("r_max must exceed the axis offset");
    std::vector<ShockStation> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double r = (i + 1 == n) ? r_max
                                      : kAxisOffset + (r_max - kAxisOffset) * i / (n - 1);
        out.push_back(shape.station_at_radius(r, fs.j()));
        if (i > 0 && !(out[i].beta_hat < out[i - 1].beta_hat))
            throw InvalidShape("shock angle is not strictly decreasing at r = " +
                               std::to_string(r));
    }
    return out;
}

/// Station S where the streamline with stream function psi crossed the shock.
inline ShockStation locate_S(const ShockShape& shape, const FreestreamConditions& fs,
                             double psi) {
    if (!(psi >= 0.0)) throw OutOfDomain("stream function must be >= 0");
    const double r = radius_at_stream_function(psi, fs.j());
    if (r > shape.max_radius() * (1.0 + 1e-14))
        throw OutOfDomain("stream function beyond the shock extent");
    return shape.station_at_radius(r, fs.j());
}

} // namespace shocklayer
