#pragma once

#include <array>
#include <optional>
#include <vector>

// Heisenberg group kernel: group law, dilations, rotations about the
// group center, the left-invariant frame, and left-translation of planes.

namespace hbern {

/// Point of H^1 in exponential coordinates.
struct GroupPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

/// Coefficients of a*X1 + b*X2 + k*T in the left-invariant frame.
struct FrameVector {
    double a = 0.0;
    double b = 0.0;
    double k = 0.0;
};

/// Locus a*x + b*y + c*t = gamma. Requires a^2 + b^2 + c^2 > 0.
struct EuclideanPlane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double gamma = 0.0;
};

/// Homogeneous dimension of H^n.
constexpr int homogeneous_dimension(int n) { return 2 * n + 2; }

GroupPoint compose(const GroupPoint& g, const GroupPoint& h);
GroupPoint inverse(const GroupPoint& g);

/// Non-isotropic dilation (lambda x, lambda y, lambda^2 t). Requires lambda > 0.
GroupPoint dilate(double lambda, const GroupPoint& g);

/// Rotation of the (x,y) slice by theta, fixing t.
GroupPoint rotate_z(double theta, const GroupPoint& g);

/// Euclidean components at g of the frame vector a*X1 + b*X2 + k*T.
std::array<double, 3> frame_ambient(const GroupPoint& g, const FrameVector& v);

/// Image of the plane P under left-translation by g0.
EuclideanPlane translate_plane(const GroupPoint& g0, const EuclideanPlane& p);

/// Isolated characteristic point (-2b/c, 2a/c, gamma/c), empty for vertical planes.
std::optional<GroupPoint> plane_characteristic_point(const EuclideanPlane& p);

/// Signed distance-like residual of g against the plane locus.
double plane_residual(const EuclideanPlane& p, const GroupPoint& g);

/// Point of H^n, x and y of equal length n.
struct GroupPointN {
    std::vector<double> x;
    std::vector<double> y;
    double t = 0.0;
};

GroupPointN compose(const GroupPointN& g, const GroupPointN& h);
GroupPointN dilate(double lambda, const GroupPointN& g);

}  // namespace hbern
