#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

// Adaptive quadrature on intervals and rectangles built on a nested
// 15-point/7-point Gauss-Kronrod pair per axis.

namespace hbern {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_floor = 1e-14;
    int max_depth = 30;
    std::int64_t max_cells = 200000;  // refinement budget per integral
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // estimate, reported <= tolerance on success
    bool converged = true;
    std::int64_t evaluations = 0;
};

class QuadratureError : public std::runtime_error {
public:
    explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Rect {
    double u0 = 0.0, u1 = 0.0;
    double v0 = 0.0, v1 = 0.0;
    double area() const { return (u1 - u0) * (v1 - v0); }
    bool contains(double u, double v) const {
        return u >= u0 && u <= u1 && v >= v0 && v <= v1;
    }
};

/// Adaptive integral of f over [a,b].
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec = {});

/// Adaptive tensor-product integral of f over the rectangle. Subdivision
/// always splits the axis with the larger embedded-rule error estimate,
/// in a deterministic depth-first order.
QuadResult integrate2d(const std::function<double(double, double)>& f, const Rect& r,
                       const QuadratureSpec& spec = {});

/// Fixed composite Gauss-Legendre rule over an m-dimensional box,
/// `cells` subdivisions and 16 nodes per axis. For smooth integrands in
/// moderate dimension where adaptivity is unaffordable.
double tensor_integrate(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<double>& lo, const std::vector<double>& hi,
                        int cells);

}  // namespace hbern
