#pragma once

// Perfect-gas shock relations in dimensionless units: rho_inf = U_inf = L = 1,
// so P_inf = 1 / (gamma M^2) and pressures are in units of rho_inf U_inf^2.

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace shocklayer {

enum class Geometry : int { plane = 0, axisymmetric = 1 };

inline int geometry_index(Geometry g) { return static_cast<int>(g); }

inline const char* to_string(Geometry g) {
    return g == Geometry::plane ? "plane" : "axisym";
}

struct FreestreamConditions {
    double mach = 4.0;
    double gamma = 1.4;
    Geometry geometry = Geometry::plane;
    double body_radius = 0.5;

    int j() const { return geometry_index(geometry); }
    double p_inf() const { return 1.0 / (gamma * mach * mach); }
    /// sqrt(M^2 - 1), the hyperbola slope parameter.
    double beta_m() const { return std::sqrt(mach * mach - 1.0); }
    /// Enthalpy h = gamma/(gamma-1) P/rho; freestream value.
    double h_inf() const { return gamma / (gamma - 1.0) * p_inf(); }

    void validate() const {
        if (!(mach > 1.0) || !std::isfinite(mach))
            throw ValidationError("mach must be > 1, got " + std::to_string(mach));
        if (!(gamma > 1.0) || !std::isfinite(gamma))
            throw ValidationError("gamma must be > 1, got " + std::to_string(gamma));
        if (!(body_radius > 0.0) || !std::isfinite(body_radius))
            throw ValidationError("body radius must be > 0, got " + std::to_string(body_radius));
    }
};

struct PostShockState {
    double u_t = 0.0;  // tangential velocity
    double v_n = 0.0;  // normal velocity
    double p = 0.0;
    double chi = 0.0;  // rho_inf / rho behind the shock
    double beta = 0.0;
    double h = 0.0;

    double rho() const { return 1.0 / chi; }
};

namespace detail {
inline void check_shock_angle(const FreestreamConditions& fs, double beta) {
    const double s = std::sin(beta);
    if (!(s > 0.0))
        throw WeakShock("shock angle must satisfy sin(beta) > 0");
    // Tolerate rounding right at the Mach angle.
    if (fs.mach * s < 1.0 - 1e-12)
        throw WeakShock("M sin(beta) = " + std::to_string(fs.mach * s) + " < 1");
}
} // namespace detail

/// rho_inf / rho behind an oblique shock of angle beta.
inline double inverse_compression_ratio(const FreestreamConditions& fs, double beta) {
    detail::check_shock_angle(fs, beta);
    const double g = fs.gamma;
    const double s = std::sin(beta);
    return (g - 1.0) / (g + 1.0) + 2.0 / ((g + 1.0) * fs.mach * fs.mach * s * s);
}

/// Rankine-Hugoniot state immediately behind the shock. Serves both the
/// station point N and the streamline entry point S.
inline PostShockState post_shock_state(const FreestreamConditions& fs, double beta) {
    const double chi = inverse_compression_ratio(fs, beta);
    const double s = std::sin(beta);
    PostShockState st;
    st.beta = beta;
    st.chi = chi;
    st.u_t = std::cos(beta);
    st.v_n = chi * s;
    st.p = fs.p_inf() + (1.0 - chi) * s * s;
    st.h = fs.h_inf() + 0.5 * (1.0 - chi * chi) * s * s;
    return st;
}

/// Stagnation pressure behind a normal shock (Rayleigh pitot formula).
inline double pitot_pressure(const FreestreamConditions& fs) {
    if (!(fs.mach > 1.0))
        throw ValidationError("pitot pressure requires M > 1");
    const double g = fs.gamma;
    const double m2 = fs.mach * fs.mach;
    const double a = std::pow((g + 1.0) * (g + 1.0) * m2 / (4.0 * g * m2 - 2.0 * (g - 1.0)),
                              g / (g - 1.0));
    const double b = (1.0 - g + 2.0 * g * m2) / (g + 1.0);
    return a * b * fs.p_inf();
}

inline double degrees(double radians) { return radians * 180.0 / std::numbers::pi; }
inline double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

} // namespace shocklayer
