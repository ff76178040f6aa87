#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"

namespace shocklayer {

/// Natural cubic spline (zero second derivative at both ends) through
/// strictly increasing abscissae. Stores knot values and second derivatives.
class NaturalCubicSpline {
public:
    NaturalCubicSpline() = default;

    NaturalCubicSpline(std::span<const double> x, std::span<const double> y)
        : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
        const std::size_t n = x_.size();
        if (n != y_.size())
            throw DegenerateInput("spline abscissa and ordinate sizes differ");
        if (n < 3)
            throw DegenerateInput("spline needs at least 3 knots");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw DegenerateInput("spline abscissae must be strictly increasing");

        // Tridiagonal system for interior second derivatives (Thomas algorithm).
        m_.assign(n, 0.0);
        std::vector<double> c(n, 0.0), d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x_[i] - x_[i - 1];
            const double h1 = x_[i + 1] - x_[i];
            const double diag = 2.0 * (h0 + h1);
            const double rhs = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
            const double denom = diag - h0 * c[i - 1];
            c[i] = h1 / denom;
            d[i] = (rhs - h0 * d[i - 1]) / denom;
        }
        for (std::size_t i = n - 2; i >= 1; --i)
            m_[i] = d[i] - c[i] * m_[i + 1];
    }

    double front() const { return x_.front(); }
    double back() const { return x_.back(); }
    std::size_t size() const { return x_.size(); }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }

    bool contains(double x) const { return x >= x_.front() && x <= x_.back(); }

    double value(double x) const { return eval(x, 0); }
    double derivative(double x) const { return eval(x, 1); }
    double second_derivative(double x) const { return eval(x, 2); }

private:
    double eval(double x, int order) const {
        if (!contains(x))
            throw OutOfDomain("spline evaluated outside its knot range");
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0));
        if (i >= x_.size() - 1) i = x_.size() - 2;
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h;
        const double b = (x - x_[i]) / h;
        switch (order) {
        case 0:
            return a * y_[i] + b * y_[i + 1] +
                   ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
        case 1:
            return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) * h * m_[i] / 6.0 +
                   (3.0 * b * b - 1.0) * h * m_[i + 1] / 6.0;
        default:
            return a * m_[i] + b * m_[i + 1];
        }
    }

    std::vector<double> x_, y_, m_;
};

} // namespace shocklayer
