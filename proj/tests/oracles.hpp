#pragma once

#include <cmath>
#include <functional>
#include <random>

// Independent numerical oracles for the unit and acceptance tests:
// central finite differences for derivative checks and a dense composite
// trapezoid rule for integral checks. These deliberately avoid the
// library's own jet and quadrature paths.

namespace oracle {

inline double fd1(const std::function<double(double)>& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double fd2(const std::function<double(double)>& f, double x, double h = 1e-4) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Composite trapezoid rule on [a,b] x [c,d] with an n x n grid.
inline double trapezoid2d(const std::function<double(double, double)>& f, double a, double b,
                          double c, double d, int n) {
    double sum = 0.0;
    const double hu = (b - a) / n, hv = (d - c) / n;
    for (int i = 0; i <= n; ++i) {
        const double wu = (i == 0 || i == n) ? 0.5 : 1.0;
        const double u = a + hu * i;
        double row = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double wv = (j == 0 || j == n) ? 0.5 : 1.0;
            row += wv * f(u, c + hv * j);
        }
        sum += wu * row;
    }
    return sum * hu * hv;
}

inline double trapezoid1d(const std::function<double(double)>& f, double a, double b, int n) {
    double sum = 0.5 * (f(a) + f(b));
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) sum += f(a + h * i);
    return sum * h;
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline double uniform(std::mt19937& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace oracle
