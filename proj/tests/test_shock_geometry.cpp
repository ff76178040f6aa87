#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "shocklayer/shock_geometry.hpp"
#include "test_util.hpp"

using namespace shocklayer;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

FreestreamConditions fs_at(double mach, Geometry g = Geometry::plane) {
    FreestreamConditions fs;
    fs.mach = mach;
    fs.geometry = g;
    return fs;
}

ShockShape published_m4() { return ShockShape::poly(4.0, 17.615, {0.998, -0.045}); }

} // namespace

TEST(RadiusAt, MoeckelAndPolyValues) {
    const auto m = ShockShape::moeckel(4.0, 17.615);
    EXPECT_EQ(m.radius_at(0.0), 0.0);
    // mpmath oracle
    EXPECT_NEAR(m.radius_at(1.0), 1.55413427133351, 1e-12);
    EXPECT_NEAR(published_m4().radius_at(1.0), 1.44233600279084, 1e-12);
    const double f = m.radius_at(1.0);
    EXPECT_NEAR(published_m4().radius_at(1.0), 0.998 * f - 0.045 * f * f, 1e-13);
}

TEST(RadiusAt, RejectsNegativeZ) {
    EXPECT_THROW(ShockShape::moeckel(4.0, 17.615).radius_at(-0.1), OutOfDomain);
}

TEST(StationAt, Vertex) {
    const auto st = ShockShape::moeckel(4.0, 17.615).station_at(0.0, 0);
    EXPECT_DOUBLE_EQ(st.beta_hat, kHalfPi);
    EXPECT_EQ(st.r_hat, 0.0);
    EXPECT_EQ(st.psi_hat, 0.0);
    EXPECT_NEAR(st.kappa_hat, 0.851546977008232, 1e-12);
    EXPECT_DOUBLE_EQ(station_at(published_m4(), 0.0, 1).beta_hat, kHalfPi);
}

TEST(StationAt, PolyVertexCurvature) {
    // kappa(0) = beta_M^2 / (z0 c1^2)
    const auto st = published_m4().station_at(0.0, 0);
    EXPECT_NEAR(st.kappa_hat, 15.0 / (17.615 * 0.998 * 0.998), 1e-12);
}

TEST(StationAt, MoeckelInteriorOracle) {
    const auto st = ShockShape::moeckel(4.0, 17.615).station_at(1.0, 0);
    EXPECT_NEAR(st.kappa_hat, 0.175305201575453, 1e-12);
    EXPECT_NEAR(st.beta_hat, 0.673834983847831, 1e-12);
    EXPECT_NEAR(st.psi_hat, 1.55413427133351, 1e-12);
    const auto ax = ShockShape::moeckel(4.0, 17.615).station_at(1.0, 1);
    EXPECT_NEAR(ax.psi_hat, 0.5 * 1.55413427133351 * 1.55413427133351, 1e-12);
}

TEST(StationAt, AsymptoteIsMachAngle) {
    const auto st = ShockShape::moeckel(4.0, 17.615).station_at(1e9, 0);
    EXPECT_NEAR(degrees(st.beta_hat), 14.47751219, 1e-6);
}

TEST(StationAt, AngleDecreasesForPublishedShapes) {
    const double z0s[] = {17.615, 26.755, 38.495, 51.982, 67.984};
    const double bs[] = {-0.045, -0.050, -0.052, -0.054, -0.058};
    for (int k = 0; k < 5; ++k) {
        const double mach = 4.0 + k;
        for (const auto& shape : {ShockShape::moeckel(mach, z0s[k]),
                                  ShockShape::poly(mach, z0s[k], {0.998, bs[k]})}) {
            double prev = kHalfPi + 1.0;
            for (double z = 0.0; z <= 3.0; z += 0.01) {
                const double beta = shape.station_at(z, 0).beta_hat;
                EXPECT_LT(beta, prev) << "M=" << mach << " z=" << z;
                prev = beta;
                EXPECT_GT(shape.station_at(z, 0).kappa_hat, 0.0);
            }
        }
    }
}

TEST(ShapeFactories, Validation) {
    EXPECT_THROW(ShockShape::moeckel(4.0, 0.0), ValidationError);
    EXPECT_THROW(ShockShape::moeckel(0.9, 10.0), ValidationError);
    EXPECT_THROW(ShockShape::poly(4.0, 17.0, {-1.0, 0.1}), ValidationError);
    EXPECT_THROW(ShockShape::poly(4.0, 17.0, {}), ValidationError);
    EXPECT_THROW(ShockShape::poly(4.0, 17.0, {1, 0, 0, 0, 0}), ValidationError);
    EXPECT_EQ(published_m4().family(), ShapeFamily::poly);
    EXPECT_EQ(published_m4().params(), (std::vector<double>{17.615, 0.998, -0.045}));
}

TEST(ShapeFactories, FoldingPolynomialIsInvalid) {
    // r = f - f^2 turns back at f = 1/2 (r = 1/4).
    const auto s = ShockShape::poly(4.0, 17.615, {1.0, -1.0});
    EXPECT_THROW(s.station_at_radius(0.3, 0), InvalidShape);
}

TEST(SampleStations, EndpointsAndMonotonicity) {
    const auto shape = published_m4();
    const auto fs = fs_at(4.0);
    const double r1 = shape.radius_at(1.0);
    const auto two = sample_stations(shape, fs, 2, r1);
    ASSERT_EQ(two.size(), 2u);
    EXPECT_NEAR(two[0].r_hat, kAxisOffset, 1e-15);
    EXPECT_NEAR(two[1].r_hat, r1, 1e-12);

    const auto st = sample_stations(shape, fs, 200, 0.8);
    ASSERT_EQ(st.size(), 200u);
    for (std::size_t i = 1; i < st.size(); ++i) {
        EXPECT_GT(st[i].psi_hat, st[i - 1].psi_hat);
        EXPECT_LT(st[i].beta_hat, st[i - 1].beta_hat);
    }
    EXPECT_THROW(sample_stations(shape, fs, 1, 0.8), ValidationError);
    EXPECT_THROW(sample_stations(shape, fs, 10, 1e-4), ValidationError);
}

TEST(LocateS, TrivialInversions) {
    const auto shape = published_m4();
    EXPECT_NEAR(locate_S(shape, fs_at(4.0), 0.3).r_hat, 0.3, 1e-12);
    EXPECT_NEAR(locate_S(shape, fs_at(4.0, Geometry::axisymmetric), 0.5).r_hat, 1.0, 1e-12);
    const auto vertex = locate_S(shape, fs_at(4.0), 0.0);
    EXPECT_DOUBLE_EQ(vertex.beta_hat, kHalfPi);
    EXPECT_THROW(locate_S(shape, fs_at(4.0), -1e-3), OutOfDomain);
}

TEST(LocateS, RoundTrip) {
    const auto shape = published_m4();
    for (auto g : {Geometry::plane, Geometry::axisymmetric}) {
        const auto fs = fs_at(4.0, g);
        for (double psi = 1e-4; psi < 2.0; psi *= 1.7)
            EXPECT_NEAR(locate_S(shape, fs, psi).psi_hat, psi, 1e-10 * std::max(1.0, psi));
    }
}

namespace {

std::vector<std::pair<double, double>> moeckel_knots(double z0, int n, double r_end) {
    const auto m = ShockShape::moeckel(4.0, z0);
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < n; ++i) {
        const double r = r_end * i / (n - 1);
        pts.emplace_back(m.station_at_radius(r, 0).z_hat, r);
    }
    return pts;
}

} // namespace

TEST(FitSplineShock, ReproducesKnots) {
    const auto pts = moeckel_knots(17.615, 50, 1.0);
    const auto s = fit_spline_shock(pts);
    EXPECT_EQ(s.family(), ShapeFamily::spline);
    for (const auto& [z, r] : pts) EXPECT_NEAR(s.radius_at(z), r, 1e-6);
    EXPECT_DOUBLE_EQ(s.station_at(0.0, 0).beta_hat, kHalfPi);
}

TEST(FitSplineShock, CurvatureWithinOnePercent) {
    const auto pts = moeckel_knots(17.615, 50, 1.0);
    const auto s = fit_spline_shock(pts);
    const auto m = ShockShape::moeckel(4.0, 17.615);
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const double r = pts[i].second;
        const double ks = s.station_at_radius(r, 0).kappa_hat;
        const double km = m.station_at_radius(r, 0).kappa_hat;
        EXPECT_LT(std::abs(ks - km), 0.01 * km) << "r=" << r;
    }
}

TEST(FitSplineShock, TranslatesToVertex) {
    auto pts = moeckel_knots(17.615, 20, 1.0);
    for (auto& p : pts) {
        p.first += 3.0;
        p.second += 0.0;
    }
    const auto s = fit_spline_shock(pts);
    EXPECT_NEAR(s.radius_at(pts[5].first - 3.0), pts[5].second, 1e-12);
}

TEST(FitSplineShock, DegenerateInputs) {
    EXPECT_THROW(fit_spline_shock({{0, 0}, {1, 1}, {2, 2}}), DegenerateInput);
    EXPECT_THROW(fit_spline_shock({{0, 0}, {1, 1}, {1, 2}, {2, 3}}), DegenerateInput);
    EXPECT_THROW(fit_spline_shock({{0, 0}, {1, 1}, {2, 1}, {3, 3}}), DegenerateInput);
    const auto s = fit_spline_shock(moeckel_knots(17.615, 10, 1.0));
    EXPECT_THROW(s.radius_at(s.max_z() * 1.1), OutOfDomain);
    EXPECT_THROW(s.station_at_radius(1.5, 0), OutOfDomain);
}

TEST(FitSplineShock, LoadsFromFile) {
    testutil::TempDir dir;
    std::string text = "z,r\n";
    for (const auto& [z, r] : moeckel_knots(17.615, 30, 1.2))
        text += csv::format(z) + "," + csv::format(r) + "\n";
    testutil::write_text(dir.file("shock.csv"), text);
    const auto s = load_spline_shock(dir.file("shock.csv"));
    EXPECT_DOUBLE_EQ(s.station_at(0.0, 0).beta_hat, kHalfPi);
    EXPECT_NEAR(s.max_radius(), 1.2, 1e-15);

    testutil::write_text(dir.file("bad.csv"), "x,y\n0,0\n");
    EXPECT_THROW(load_spline_shock(dir.file("bad.csv")), ParseError);
}
