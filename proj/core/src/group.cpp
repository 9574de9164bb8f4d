#include "hbern/group.hpp"

#include <cmath>
#include <stdexcept>

namespace hbern {

GroupPoint compose(const GroupPoint& g, const GroupPoint& h) {
    return {g.x + h.x, g.y + h.y, g.t + h.t + 0.5 * (g.x * h.y - h.x * g.y)};
}

GroupPoint inverse(const GroupPoint& g) { return {-g.x, -g.y, -g.t}; }

GroupPoint dilate(double lambda, const GroupPoint& g) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    return {lambda * g.x, lambda * g.y, lambda * lambda * g.t};
}

GroupPoint rotate_z(double theta, const GroupPoint& g) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * g.x - s * g.y, s * g.x + c * g.y, g.t};
}

std::array<double, 3> frame_ambient(const GroupPoint& g, const FrameVector& v) {
    // X1 = d/dx - (y/2) d/dt, X2 = d/dy + (x/2) d/dt, T = d/dt.
    return {v.a, v.b, v.k - 0.5 * v.a * g.y + 0.5 * v.b * g.x};
}

EuclideanPlane translate_plane(const GroupPoint& g0, const EuclideanPlane& p) {
    return {p.a + 0.5 * p.c * g0.y,
            p.b - 0.5 * p.c * g0.x,
            p.c,
            p.gamma + p.a * g0.x + p.b * g0.y + p.c * g0.t};
}

std::optional<GroupPoint> plane_characteristic_point(const EuclideanPlane& p) {
    if (p.c == 0.0) return std::nullopt;
    return GroupPoint{-2.0 * p.b / p.c, 2.0 * p.a / p.c, p.gamma / p.c};
}

double plane_residual(const EuclideanPlane& p, const GroupPoint& g) {
    return p.a * g.x + p.b * g.y + p.c * g.t - p.gamma;
}

GroupPointN compose(const GroupPointN& g, const GroupPointN& h) {
    if (g.x.size() != h.x.size() || g.y.size() != h.y.size() || g.x.size() != g.y.size())
        throw std::invalid_argument("compose: dimension mismatch");
    GroupPointN out;
    const size_t n = g.x.size();
    out.x.resize(n);
    out.y.resize(n);
    double twist = 0.0;
    for (size_t i = 0; i < n; ++i) {
        out.x[i] = g.x[i] + h.x[i];
        out.y[i] = g.y[i] + h.y[i];
        twist += g.x[i] * h.y[i] - h.x[i] * g.y[i];
    }
    out.t = g.t + h.t + 0.5 * twist;
    return out;
}

GroupPointN dilate(double lambda, const GroupPointN& g) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    GroupPointN out = g;
    for (auto& v : out.x) v *= lambda;
    for (auto& v : out.y) v *= lambda;
    out.t *= lambda * lambda;
    return out;
}

}  // namespace hbern
