#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "shocklayer/csv.hpp"
#include "shocklayer/spline.hpp"

using namespace shocklayer;

TEST(NaturalCubicSpline, ReproducesLinearData) {
    const std::vector<double> x{0.0, 0.5, 1.5, 3.0};
    const std::vector<double> y{1.0, 2.0, 4.0, 7.0};
    const NaturalCubicSpline s(x, y);
    for (double t = 0.0; t <= 3.0; t += 0.125) {
        EXPECT_NEAR(s.value(t), 1.0 + 2.0 * t, 1e-13);
        EXPECT_NEAR(s.derivative(t), 2.0, 1e-12);
        EXPECT_NEAR(s.second_derivative(t), 0.0, 1e-12);
    }
}

TEST(NaturalCubicSpline, InterpolatesKnotsWithNaturalEnds) {
    std::vector<double> x, y;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(0.1 * i);
        y.push_back(std::sin(0.1 * i));
    }
    const NaturalCubicSpline s(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s.value(x[i]), y[i], 1e-14);
    EXPECT_NEAR(s.second_derivative(x.front()), 0.0, 1e-14);
    EXPECT_NEAR(s.second_derivative(x.back()), 0.0, 1e-14);
    EXPECT_NEAR(s.value(1.05), std::sin(1.05), 1e-5);
    EXPECT_NEAR(s.derivative(1.05), std::cos(1.05), 1e-4);
}

TEST(NaturalCubicSpline, Errors) {
    const std::vector<double> two{0.0, 1.0};
    EXPECT_THROW(NaturalCubicSpline(two, two), DegenerateInput);
    const std::vector<double> x{0.0, 1.0, 1.0}, y{0.0, 1.0, 2.0};
    EXPECT_THROW(NaturalCubicSpline(x, y), DegenerateInput);
    const std::vector<double> xs{0.0, 1.0, 2.0};
    const NaturalCubicSpline s(xs, y);
    EXPECT_THROW(s.value(2.5), OutOfDomain);
    EXPECT_THROW(s.value(-0.1), OutOfDomain);
}

TEST(Csv, ParsesHeaderCommentsAndBlankLines) {
    std::istringstream in("# comment\nz, r\n\n0,0\n1.5 ,+2e-1\n");
    const auto t = csv::parse(in);
    ASSERT_EQ(t.header.size(), 2u);
    EXPECT_EQ(t.header[1], "r");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_DOUBLE_EQ(t.rows[1][1], 0.2);
    EXPECT_EQ(t.row_lines[1], 5u);
    EXPECT_EQ(t.column("r"), 1u);
    EXPECT_FALSE(t.column("rho").has_value());
}

TEST(Csv, ParseErrorsCarryLineNumbers) {
    std::istringstream bad_number("z,r\n0,0\n1,abc\n");
    try {
        csv::parse(bad_number);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    std::istringstream bad_width("z,r\n0,0,0\n");
    try {
        csv::parse(bad_width);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream empty("");
    EXPECT_THROW(csv::parse(empty), ParseError);
    EXPECT_THROW(csv::read_file("/nonexistent/file.csv"), ParseError);
}

TEST(Csv, FormatRoundTripsExactly) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 17.615, 0.21875}) {
        std::istringstream in("x\n" + csv::format(v) + "\n");
        EXPECT_EQ(csv::parse(in).rows[0][0], v);
    }
    std::ostringstream out;
    csv::write_row(out, {1.0, 0.5});
    EXPECT_EQ(out.str(), "1,0.5\n");
}
