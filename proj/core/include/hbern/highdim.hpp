#pragma once

#include <functional>
#include <vector>

#include "hbern/surface.hpp"

// Vertical cylinders in H^n: t-independent hypersurfaces frak_h(x, y) = 0,
// their frame, the reduction of the H-mean curvature to the Riemannian
// mean curvature of the planar projection, perimeter equality with the
// Euclidean surface measure, and the unit horizontal field of the
// high-dimensional graph construction.

namespace hbern {

/// Scalar over R^m with gradient and dense row-major Hessian.
struct CylJet {
    double v = 0;
    std::vector<double> grad;
    std::vector<double> hess;
};
using FnN = std::function<CylJet(const std::vector<double>&)>;

struct CylinderSurface {
    int n = 1;          // ambient group H^n, projection lives in R^{2n}
    FnN h;              // defining scalar of the projection
    double alpha = 0;   // gradient floor on the window
    std::vector<double> lo, hi;  // window box in R^{2n}
};

CylinderSurface cylinder_linear(int n, std::vector<double> coeffs, double offset);
CylinderSurface cylinder_sphere(int n, double radius);
/// Graph cylinder y_n = f(x, y'); f takes the 2n-1 remaining coordinates.
CylinderSurface cylinder_graph(int n, FnN f);

/// Horizontal components of the normal, equal to grad frak_h; the
/// T-component of the normal is identically zero.
std::vector<double> cylinder_frame(const CylinderSurface& c, const std::vector<double>& z);

/// H-mean curvature, equal to the divergence of the normalized planar gradient.
double cylinder_hmean(const CylinderSurface& c, const std::vector<double>& z);

struct PerimeterPair {
    double sigma_h = 0;
    double hausdorff = 0;
    double rel_gap = 0;
    double est_err = 0;
};
/// H-perimeter and Euclidean surface measure of a graph-cylinder window
/// (x, y') in the box, t in [t0, t1]; computed as 2n-dimensional integrals.
PerimeterPair cylinder_perimeter_graph(int n, const FnN& f, const std::vector<double>& lo,
                                       const std::vector<double>& hi, double t0, double t1,
                                       int cells = 2);

/// Circle cylinder of H^1 as a parametric patch (angle, t), for
/// cross-checks against the patch calculus.
ParamPatch circle_cylinder_patch(double radius, Interval theta, Interval t);

/// Unit horizontal normal of the graph cylinder at a projection point;
/// 2n components ordered (x_1..x_n, y_1..y_n), t-component always zero.
std::vector<double> negative_example_nu(int n, const FnN& f, const std::vector<double>& xyp);
/// Horizontal divergence of that field; zero when the projection is minimal.
double negative_example_div(int n, const FnN& f, const std::vector<double>& xyp);

/// Sample graphs: affine with the given slopes, and a cylindrical
/// extension of the classical saddle by translation-invariant directions.
FnN graph_affine(int args, std::vector<double> slopes, double offset);
FnN graph_periodic_saddle(int args);

}  // namespace hbern
