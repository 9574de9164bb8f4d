#pragma once

#include <vector>

#include "hbern/quadrature.hpp"
#include "hbern/surface.hpp"

// Horizontal differential calculus: frame data of the Riemannian normal,
// characteristic locus, H-mean curvature by several routes, the Z/Y/T
// derivatives, and the H-perimeter quadrature.

namespace hbern {

/// Frame components of the normal: p, q along X1, X2, omega along T,
/// the angle function W = sqrt(p^2 + q^2), and the normalized fields.
struct FrameData {
    double p = 0, q = 0, omega = 0;
    double W = 0;
    double normN = 0;  // sqrt(p^2 + q^2 + omega^2)
    bool characteristic = true;
    double pbar = 0, qbar = 0, obar = 0;  // zero at characteristic points
    double eps_char = 0;                  // scale-aware threshold used
};

FrameData frame_from_patchjet(const PatchJet& j);
FrameData frame_from_patch(const ParamPatch& patch, double u, double v);
FrameData frame_from_ambient(const AmbientJet& a, const GroupPoint& g);
FrameData frame_from_defining(const DefiningFn& phi, const GroupPoint& g);

/// Frame data plus parameter-space partials of p, q, omega and the bars.
struct PatchFrame {
    FrameData f;
    double pu = 0, pv = 0, qu = 0, qv = 0, wu = 0, wv = 0;
    double Wu = 0, Wv = 0;
    double pbu = 0, pbv = 0, qbu = 0, qbv = 0, obu = 0, obv = 0;
};
PatchFrame patch_frame(const PatchJet& j);

/// Frame data plus ambient X1/X2/T derivatives of p, q and the bars,
/// propagated exactly through the defining function.
struct FrameDerivs {
    FrameData f;
    double X1p = 0, X2p = 0, Tp = 0;
    double X1q = 0, X2q = 0, Tq = 0;
    double X1W = 0, X2W = 0, TW = 0;
    double X1pbar = 0, X2pbar = 0, Tpbar = 0;
    double X1qbar = 0, X2qbar = 0, Tqbar = 0;
    double Tobar = 0;
    double Ypbar = 0, Zpbar = 0, Yqbar = 0, Zqbar = 0;
    double H = 0;  // X1 pbar + X2 qbar
};
FrameDerivs frame_derivs(const DefiningFn& phi, const GroupPoint& g);

/// H-mean curvature. Throws std::domain_error at characteristic points.
double hmean(const DefiningFn& phi, const GroupPoint& g);
double hmean(const ParamPatch& patch, double u, double v);
double hmean(const Surface& s, const GroupPoint& g);
/// Closed-form route for X-branch strips, assembled from the pieces
/// X1 p, X2 q, X1 W, X2 W of the strip defining function.
double hmean_strip(const GraphicalStrip& s, double y, double t);

struct BurgersValues {
    double B = 0;   // phi_u + phi phi_v
    double BB = 0;  // the operator applied twice
};
BurgersValues burgers(const IntrinsicGraph& g, double u, double v);
double hmean_intrinsic(const IntrinsicGraph& g, double u, double v);

struct ZYT {
    double Z = 0, Y = 0, T = 0;
};
/// Actions of (nu^H)^perp, nu^H and T on an ambient scalar, with the
/// surface frame taken from the defining function.
ZYT zyt_derivatives(const DefiningFn& phi, const GroupPoint& g, const AmbientScalar& zeta);

/// Integral of F against the H-perimeter measure W du dv of the patch.
QuadResult sigma_h_integral(const ParamPatch& patch,
                            const std::function<double(double, double)>& F,
                            const QuadratureSpec& spec = {});
double h_perimeter(const ParamPatch& patch, const QuadratureSpec& spec = {});

struct CharPoint {
    double u = 0, v = 0;
    double W = 0;
};
/// Grid minima of W below threshold, refined by Gauss-Newton on (p, q).
/// An empty list certifies absence of zeros on the sampled window only.
std::vector<CharPoint> characteristic_scan(const ParamPatch& patch, int grid = 64,
                                           double capture = 1e-6);

}  // namespace hbern
