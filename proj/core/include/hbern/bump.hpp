#pragma once

#include <cmath>

#include "hbern/jets.hpp"

// Smooth compactly supported bumps with exact jets.

namespace hbern {

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
inline Jet1 smoothstep_jet(const Jet1& x) {
    if (x.v <= 0.0) return Jet1::constant(0.0);
    if (x.v >= 1.0) return Jet1::constant(1.0);
    const Jet1 e1 = exp(-recip(x));
    const Jet1 e2 = exp(-recip(1.0 - x));
    return e1 / (e1 + e2);
}

/// C-infinity bump on (lo, hi): peak 1 at the center, 0 outside.
inline Jet1 window_bump_jet(double s, double lo, double hi) {
    const double scale = 2.0 / (hi - lo);
    Jet1 xi = {(2.0 * s - lo - hi) / (hi - lo), scale, 0.0, 0.0};
    if (std::abs(xi.v) >= 1.0) return Jet1::constant(0.0);
    const Jet1 w = 1.0 - xi * xi;
    return exp(1.0 - recip(w));
}

/// Plateau bump: 1 on |s| <= delta, 0 for |s| >= 2 delta, in [0, 1].
inline Jet1 plateau_bump_jet(double s, double delta) {
    if (std::abs(s) <= delta) return Jet1::constant(1.0);
    if (std::abs(s) >= 2.0 * delta) return Jet1::constant(0.0);
    Jet1 sj = Jet1::variable(s);
    const Jet1 arg = s > 0.0 ? (2.0 * delta - sj) / delta : (2.0 * delta + sj) / delta;
    return smoothstep_jet(arg);
}

}  // namespace hbern
