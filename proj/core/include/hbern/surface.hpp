#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hbern/expr.hpp"
#include "hbern/group.hpp"
#include "hbern/quadrature.hpp"

// Surface representations: parametric patches with analytic jets,
// ambient defining functions, graphical strips, intrinsic graphs and
// seed-curve data, with the conversions between them.

namespace hbern {

struct Vec2 {
    double x = 0.0, y = 0.0;
};
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
/// (a.y, -a.x), the perp convention used for rules and curvature.
inline Vec2 perp(Vec2 a) { return {a.y, -a.x}; }

/// Position and first/second parameter derivatives of a patch map.
struct PatchJet {
    double x = 0, y = 0, t = 0;
    double xu = 0, xv = 0, yu = 0, yv = 0, tu = 0, tv = 0;
    double xuu = 0, xuv = 0, xvv = 0;
    double yuu = 0, yuv = 0, yvv = 0;
    double tuu = 0, tuv = 0, tvv = 0;
    GroupPoint point() const { return {x, y, t}; }
};

class ParamPatch {
public:
    ParamPatch() = default;
    ParamPatch(std::function<PatchJet(double, double)> f, Rect domain)
        : f_(std::move(f)), domain_(domain) {}

    bool valid() const { return static_cast<bool>(f_); }
    const Rect& domain() const { return domain_; }

    PatchJet eval(double u, double v) const;

private:
    std::function<PatchJet(double, double)> f_;
    Rect domain_;
};

/// Ambient scalar with gradient and Hessian in coordinates (x, y, t).
struct AmbientJet {
    double v = 0;
    double gx = 0, gy = 0, gt = 0;
    double hxx = 0, hxy = 0, hxt = 0, hyy = 0, hyt = 0, htt = 0;
};

/// Ambient scalar with gradient only (deformation amplitudes).
struct AmbientJet1 {
    double v = 0;
    double gx = 0, gy = 0, gt = 0;
};
using AmbientScalar = std::function<AmbientJet1(const GroupPoint&)>;

class DefiningFn {
public:
    DefiningFn() = default;
    DefiningFn(std::function<AmbientJet(const GroupPoint&)> f, double gradient_floor)
        : f_(std::move(f)), floor_(gradient_floor) {}

    bool valid() const { return static_cast<bool>(f_); }
    AmbientJet eval(const GroupPoint& g) const { return f_(g); }
    double gradient_floor() const { return floor_; }

private:
    std::function<AmbientJet(const GroupPoint&)> f_;
    double floor_ = 0.0;
};

enum class StripBranch { X, Y };

/// Surface x = y G(t) (X branch) or y = -x G(t) (Y branch), G' >= 0 on I.
struct GraphicalStrip {
    ScalarFn G;
    Interval I;
    StripBranch branch = StripBranch::X;
    std::optional<Interval> strict_window;  // where G' > 0
};

/// Builds a strip, scanning for the strict window and rejecting G' < 0.
GraphicalStrip strip_new(const ScalarFn& G, Interval I, StripBranch branch = StripBranch::X);

/// Maps a Y-branch strip to the equivalent X-branch strip (rotation by -pi/2).
GraphicalStrip strip_to_x_branch(const GraphicalStrip& s);

ParamPatch strip_patch(const GraphicalStrip& s, Interval first_range, Interval t_range);
DefiningFn strip_defining(const GraphicalStrip& s);

/// Jet of the intrinsic-graph function phi on its domain Omega.
struct IntrinsicJet {
    bool in_domain = false;
    double phi = 0;
    double pu = 0, pv = 0;
    double puu = 0, puv = 0, pvv = 0;
};

class IntrinsicGraph {
public:
    IntrinsicGraph() = default;
    explicit IntrinsicGraph(std::function<IntrinsicJet(double, double)> f) : f_(std::move(f)) {}
    IntrinsicJet eval(double u, double v) const { return f_(u, v); }
    /// Ambient point (phi, u, v - u*phi/2) of the X1-graph parameterization.
    GroupPoint point(double u, double v) const;

private:
    std::function<IntrinsicJet(double, double)> f_;
};

/// Intrinsic X1-graph of an X-branch strip; the domain Omega is detected
/// through root bracketing of t + (u^2/2) G(t) = v on I.
IntrinsicGraph strip_to_intrinsic(const GraphicalStrip& s);

/// Intrinsic graph from an explicit phi(u, v) with Omega = all of R^2.
IntrinsicGraph intrinsic_from_fn(const ScalarFn& phi);

/// Seed-curve data: gamma with derivatives to third order plus the
/// height function and its s-derivatives.
struct SeedJet {
    Vec2 gamma, d1, d2, d3;
    double h0 = 0, h1 = 0, h2 = 0, h3 = 0;
};

struct SeedData {
    std::function<SeedJet(double)> eval;
    Interval I;
};

/// Arc-length circle seed gamma(s) = center + R (cos(s/R + phase), sin(s/R + phase)).
SeedData make_circle_seed(Vec2 center, double radius, double phase, const ScalarFn& h0,
                          Interval I);
/// Line seed gamma(s) = base + s (a1, a2), |a| = 1.
SeedData make_line_seed(Vec2 base, Vec2 dir, const ScalarFn& h0, Interval I);

/// Signed curvature gamma'' . perp(gamma') at s.
double seed_curvature(const SeedData& seed, double s);

/// Ruled H-minimal surface F(s, r) spanned by the seed data.
ParamPatch seed_surface(const SeedData& seed, Interval r_range);
ParamPatch seed_surface(const SeedData& seed, Interval s_range, Interval r_range);

/// Tagged surface: a patch factory plus, where available, a defining function.
struct Surface {
    std::string kind;
    std::optional<GraphicalStrip> strip;
    std::optional<DefiningFn> defining;
    std::function<ParamPatch(const Rect&)> patch_factory;
    Rect default_window;

    ParamPatch patch() const { return patch_factory(default_window); }
    ParamPatch patch(const Rect& w) const { return patch_factory(w); }
};

Surface surface_from_strip(const GraphicalStrip& s);
/// Graph t = f(x, y); f has arity 2 in (x, y).
Surface graph_xy_new(const ScalarFn& f, const Rect& window);
/// Graph x = psi(y, t); psi has arity 2 in (y, t).
Surface graph_yt_new(const ScalarFn& psi, const Rect& window);
/// Entire H-minimal graph of the second kind over the (x,y)-plane.
Surface type2_xygraph(double a, double b, const GroupPoint& g0, const ScalarFn& h0,
                      const Rect& window);
Surface vertical_plane(double a, double b, double gamma);
/// Intrinsic phi of a vertical plane with a != 0: phi(u,v) = -(b/a) u + gamma/a.
IntrinsicGraph vertical_plane_intrinsic(double a, double b, double gamma);

}  // namespace hbern
