#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "hbern/frame.hpp"
#include "hbern/surface.hpp"

// Seed-curve machinery: tracing seed curves of H-minimal (x,y)-graphs,
// rule lines, left-translation of seed data, line/circle classification,
// and the reduction of a non-planar H-minimal (y,t)-graph to a strict
// graphical strip.

namespace hbern {

/// Horizontal rule through the seed point at parameter s.
struct RuleLine {
    GroupPoint base;
    std::array<double, 3> direction;  // (gamma'^perp, -gamma . gamma' / 2)
};
RuleLine rule_line(const SeedData& seed, double s);

/// Seed data of the left-translated surface g0 o S.
SeedData translate_seed(const GroupPoint& g0, const SeedData& seed);

/// (1/2)(gamma1'(s_ref) (gamma.gamma')(s) - gamma1'(s) (gamma.gamma')(s_ref));
/// zero for every s is the entire-graph condition on rule projections.
double coplanarity_residual(const SeedData& seed, double s_ref, double s);
inline double coplanarity_residual(const SeedData& seed, double s) {
    return coplanarity_residual(seed, 0.0, s);
}

struct SeedClassification {
    enum class Kind { Line, Circle, NotAGraph };
    Kind kind = Kind::Line;
    Vec2 line_base{}, line_dir{};
    double C = 0, C0 = 0;  // fit constants of the off-center circle branch
    Vec2 center{};
    double radius = 0;
    double residual = 0;  // residual of the claimed kind
    double line_residual = 0, circle_residual = 0;
    double coplanarity = 0;  // max residual over the window
};
SeedClassification classify_seed(const SeedData& seed, Interval J, double tol = 1e-7);

/// The r at which the angle function vanishes on the rule through s of a
/// straight-line seed.
double line_seed_characteristic(const SeedData& seed, double s);

struct TraceOptions {
    double base_step = 1e-2;
    double tol_per_unit = 1e-10;
    double char_floor = 1e-9;
};

/// Height function of an (x,y)-graph with first/second partials; third
/// order entries may be left empty by implicit constructions.
using GraphFn2 = std::function<Jet2(double, double)>;

/// Integral curve of the normalized planar horizontal Gauss map through z0,
/// traced arc_each_way in both directions, with the height along the curve.
SeedData seed_trace(const GraphFn2& f, Vec2 z0, double arc_each_way,
                    const TraceOptions& opts = {});

struct StageRecord {
    std::string stage;
    bool ok = false;
    double value = 0;  // representative residual or measurement
    std::string detail;
};

struct ReductionResult {
    bool ok = false;
    GraphicalStrip strip;            // valid when ok
    Interval strip_t_window{};       // t-interval of the recovered profile
    Vec2 applied_translation{};      // seed-circle center removed
    double radius = 0;
    double char_W = std::numeric_limits<double>::quiet_NaN();  // line branch
    std::vector<StageRecord> stages;
    std::string failure_stage, reason;
};

struct ReduceOptions {
    Rect probe{0.5, 2.5, -1.0, 1.0};  // (y, t) probe window
    double minimality_tol = 1e-6;
    double vertical_tol = 1e-10;
    double arc = 1.0;
    double classify_tol = 1e-7;
    TraceOptions trace{};
};

/// Reduction pipeline from a (y,t)-graph x = psi(y,t) to a strict strip.
ReductionResult extract_strip(const ScalarFn& psi, const ReduceOptions& opts = {});

}  // namespace hbern
