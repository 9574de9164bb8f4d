#include "hbern/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hbern {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDefaultTrunc = 8.0;  // window for unbounded intervals

Interval truncated(Interval I) {
    return {std::max(I.lo, -kDefaultTrunc), std::min(I.hi, kDefaultTrunc)};
}
}  // namespace

PatchJet ParamPatch::eval(double u, double v) const {
    const double mu = 1e-9 * (1.0 + std::abs(domain_.u1 - domain_.u0));
    const double mv = 1e-9 * (1.0 + std::abs(domain_.v1 - domain_.v0));
    if (u < domain_.u0 - mu || u > domain_.u1 + mu || v < domain_.v0 - mv ||
        v > domain_.v1 + mv)
        throw std::out_of_range("patch evaluation outside parameter domain");
    return f_(u, v);
}

GroupPoint IntrinsicGraph::point(double u, double v) const {
    const IntrinsicJet j = f_(u, v);
    if (!j.in_domain)
        throw std::domain_error("intrinsic graph evaluated outside Omega");
    return {j.phi, u, v - 0.5 * u * j.phi};
}

GraphicalStrip strip_new(const ScalarFn& G, Interval I, StripBranch branch) {
    if (!(I.lo < I.hi)) throw std::invalid_argument("strip_new: empty interval");
    const Interval w = truncated(I);
    const int n = 1024;
    const double h = w.length() / n;
    const double eps_strict = 1e-9;
    const double neg_tol = 1e-12;

    std::vector<double> ts(n), gp(n, kNaN);
    int valid = 0;
    for (int i = 0; i < n; ++i) {
        ts[i] = w.lo + (i + 0.5) * h;
        try {
            gp[i] = G.jet(ts[i]).d1;
            ++valid;
        } catch (const DomainError&) {
        }
    }
    if (valid == 0) throw std::invalid_argument("strip_new: G not evaluable on I");
    double gmax = 0.0;
    for (int i = 0; i < n; ++i)
        if (std::isfinite(gp[i])) gmax = std::max(gmax, std::abs(gp[i]));
    for (int i = 0; i < n; ++i)
        if (std::isfinite(gp[i]) && gp[i] < -neg_tol * (1.0 + gmax))
            throw std::invalid_argument("strip_new: G' < 0 on I, not a graphical strip");

    // longest run of samples with G' > eps_strict
    int best_lo = -1, best_hi = -1, cur_lo = -1;
    for (int i = 0; i <= n; ++i) {
        const bool strict = i < n && std::isfinite(gp[i]) && gp[i] > eps_strict;
        if (strict && cur_lo < 0) cur_lo = i;
        if (!strict && cur_lo >= 0) {
            if (best_lo < 0 || i - cur_lo > best_hi - best_lo) {
                best_lo = cur_lo;
                best_hi = i;
            }
            cur_lo = -1;
        }
    }

    GraphicalStrip s;
    s.G = G;
    s.I = I;
    s.branch = branch;
    if (best_lo >= 0) {
        if (best_lo == 0 && best_hi == n) {
            s.strict_window = I;  // strict on the whole sampled interval
        } else {
            auto refine = [&](double in, double out) {
                // bisect G' = eps_strict between a strict and a non-strict point
                for (int it = 0; it < 60; ++it) {
                    const double m = 0.5 * (in + out);
                    double g;
                    try {
                        g = G.jet(m).d1;
                    } catch (const DomainError&) {
                        out = m;
                        continue;
                    }
                    (g > eps_strict ? in : out) = m;
                }
                return in;
            };
            double lo = ts[best_lo], hi = ts[best_hi - 1];
            if (best_lo > 0) lo = refine(ts[best_lo], ts[best_lo - 1]);
            if (best_hi < n) hi = refine(ts[best_hi - 1], ts[best_hi]);
            s.strict_window = Interval{lo, hi};
        }
    }
    return s;
}

GraphicalStrip strip_to_x_branch(const GraphicalStrip& s) {
    if (s.branch == StripBranch::X) return s;
    // rotation by -pi/2 about the t-axis carries y = -xG(t) onto x = yG(t)
    GraphicalStrip out = s;
    out.branch = StripBranch::X;
    return out;
}

ParamPatch strip_patch(const GraphicalStrip& s, Interval first_range, Interval t_range) {
    if (t_range.lo < s.I.lo - 1e-12 || t_range.hi > s.I.hi + 1e-12)
        throw std::invalid_argument("strip_patch: t range outside the strip interval");
    const ScalarFn G = s.G;
    Rect dom{first_range.lo, first_range.hi, t_range.lo, t_range.hi};
    if (s.branch == StripBranch::X) {
        auto f = [G](double y, double t) {
            const Jet1 g = G.jet(t);
            PatchJet j;
            j.x = y * g.v;
            j.y = y;
            j.t = t;
            j.xu = g.v;
            j.xv = y * g.d1;
            j.yu = 1.0;
            j.tv = 1.0;
            j.xuv = g.d1;
            j.xvv = y * g.d2;
            return j;
        };
        return ParamPatch(f, dom);
    }
    auto f = [G](double x, double t) {
        const Jet1 g = G.jet(t);
        PatchJet j;
        j.x = x;
        j.y = -x * g.v;
        j.t = t;
        j.xu = 1.0;
        j.yu = -g.v;
        j.yv = -x * g.d1;
        j.tv = 1.0;
        j.yuv = -g.d1;
        j.yvv = -x * g.d2;
        return j;
    };
    return ParamPatch(f, dom);
}

DefiningFn strip_defining(const GraphicalStrip& s) {
    const ScalarFn G = s.G;
    if (s.branch == StripBranch::X) {
        // phi = x - y G(t); the frame component p = 1 + (y^2/2) G' stays >= 1
        auto f = [G](const GroupPoint& g) {
            const Jet1 j = G.jet(g.t);
            AmbientJet a;
            a.v = g.x - g.y * j.v;
            a.gx = 1.0;
            a.gy = -j.v;
            a.gt = -g.y * j.d1;
            a.hyt = -j.d1;
            a.htt = -g.y * j.d2;
            return a;
        };
        return DefiningFn(f, 1.0);
    }
    auto f = [G](const GroupPoint& g) {
        const Jet1 j = G.jet(g.t);
        AmbientJet a;
        a.v = g.y + g.x * j.v;
        a.gx = j.v;
        a.gy = 1.0;
        a.gt = g.x * j.d1;
        a.hxt = j.d1;
        a.htt = g.x * j.d2;
        return a;
    };
    return DefiningFn(f, 1.0);
}

IntrinsicGraph strip_to_intrinsic(const GraphicalStrip& strip) {
    const GraphicalStrip s = strip_to_x_branch(strip);
    const ScalarFn G = s.G;
    const Interval I = s.I;

    auto jet = [G, I](double u, double v) -> IntrinsicJet {
        const double s2 = 0.5 * u * u;
        auto F = [&](double t) -> double {
            try {
                return t + s2 * G(t) - v;
            } catch (const DomainError&) {
                return kNaN;
            }
        };

        // probe toward each end of the open interval for a sign bracket
        double lo = kNaN, hi = kNaN;
        double c;
        if (std::isfinite(I.lo) && std::isfinite(I.hi))
            c = 0.5 * (I.lo + I.hi);
        else if (std::isfinite(I.lo))
            c = std::max(I.lo + 1.0, std::min(v, 1e8));
        else if (std::isfinite(I.hi))
            c = std::min(I.hi - 1.0, std::max(v, -1e8));
        else
            c = std::clamp(v, -1.0, 1.0);
        {
            const double f0 = F(c);
            if (std::isfinite(f0)) {
                if (f0 <= 0.0) lo = c;
                if (f0 >= 0.0) hi = c;
            }
        }
        for (int side = 0; side < 2; ++side) {
            const bool up = side == 0;
            if (up && std::isfinite(hi)) continue;
            if (!up && std::isfinite(lo)) continue;
            const double end = up ? I.hi : I.lo;
            double t = c;
            for (int j = 1; j <= 200; ++j) {
                if (std::isfinite(end)) {
                    t = end - (end - t) * 0.5;
                } else {
                    t = up ? std::max(1.0, 2.0 * std::abs(t)) : -std::max(1.0, 2.0 * std::abs(t));
                }
                const double f = F(t);
                if (!std::isfinite(f)) continue;
                if (up && f >= 0.0) {
                    hi = t;
                    break;
                }
                if (!up && f <= 0.0) {
                    lo = t;
                    break;
                }
                // still the wrong sign: this point tightens the other side
                if (up)
                    lo = t;
                else
                    hi = t;
            }
        }
        IntrinsicJet out;
        if (!std::isfinite(lo) || !std::isfinite(hi)) return out;  // outside Omega

        // bisection then Newton polish on the monotone map
        for (int it = 0; it < 100 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
            const double m = 0.5 * (lo + hi);
            const double f = F(m);
            if (!std::isfinite(f)) break;
            if (f <= 0.0)
                lo = m;
            else
                hi = m;
        }
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 2; ++it) {
            const Jet1 g = G.jet(t);
            const double f = t + s2 * g.v - v;
            const double fp = 1.0 + s2 * g.d1;
            const double step = f / fp;
            double tn = t - step;
            if (tn <= I.lo || tn >= I.hi) break;
            t = tn;
        }

        const Jet1 g = G.jet(t);
        const double g0 = g.v, g1 = g.d1, g2 = g.d2;
        const double D = 1.0 + s2 * g1;
        const double tu = -u * g0 / D;
        const double tv = 1.0 / D;
        const double Du = u * g1 + s2 * g2 * tu;
        const double Dv = s2 * g2 * tv;
        const double tuu = (-g0 - u * g1 * tu) / D + u * g0 * Du / (D * D);
        const double tuv = (-u * g1 * tv) / D + u * g0 * Dv / (D * D);
        const double tvv = -Dv / (D * D);

        out.in_domain = true;
        out.phi = u * g0;
        out.pu = g0 + u * g1 * tu;
        out.pv = u * g1 * tv;
        out.puu = 2.0 * g1 * tu + u * g2 * tu * tu + u * g1 * tuu;
        out.puv = g1 * tv + u * (g2 * tu * tv + g1 * tuv);
        out.pvv = u * (g2 * tv * tv + g1 * tvv);
        return out;
    };
    return IntrinsicGraph(jet);
}

IntrinsicGraph intrinsic_from_fn(const ScalarFn& phi) {
    if (phi.arity() != 2)
        throw std::invalid_argument("intrinsic_from_fn: phi must have two variables");
    return IntrinsicGraph([phi](double u, double v) {
        const Jet2 j = phi.jet(u, v);
        IntrinsicJet out;
        out.in_domain = true;
        out.phi = j.v;
        out.pu = j.x;
        out.pv = j.y;
        out.puu = j.xx;
        out.puv = j.xy;
        out.pvv = j.yy;
        return out;
    });
}

SeedData make_circle_seed(Vec2 center, double radius, double phase, const ScalarFn& h0,
                          Interval I) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle seed: radius must be positive");
    SeedData s;
    s.I = I;
    s.eval = [center, radius, phase, h0](double t) {
        const double a = t / radius + phase;
        const double c = std::cos(a), sn = std::sin(a);
        SeedJet j;
        j.gamma = {center.x + radius * c, center.y + radius * sn};
        j.d1 = {-sn, c};
        j.d2 = {-c / radius, -sn / radius};
        j.d3 = {sn / (radius * radius), -c / (radius * radius)};
        const Jet1 h = h0.jet(t);
        j.h0 = h.v;
        j.h1 = h.d1;
        j.h2 = h.d2;
        j.h3 = h.d3;
        return j;
    };
    return s;
}

SeedData make_line_seed(Vec2 base, Vec2 dir, const ScalarFn& h0, Interval I) {
    const double n = norm(dir);
    if (!(n > 0.0)) throw std::invalid_argument("line seed: zero direction");
    const Vec2 d{dir.x / n, dir.y / n};
    SeedData s;
    s.I = I;
    s.eval = [base, d, h0](double t) {
        SeedJet j;
        j.gamma = {base.x + t * d.x, base.y + t * d.y};
        j.d1 = d;
        const Jet1 h = h0.jet(t);
        j.h0 = h.v;
        j.h1 = h.d1;
        j.h2 = h.d2;
        j.h3 = h.d3;
        return j;
    };
    return s;
}

double seed_curvature(const SeedData& seed, double s) {
    const SeedJet j = seed.eval(s);
    return dot(j.d2, perp(j.d1));
}

ParamPatch seed_surface(const SeedData& seed, Interval r_range) {
    return seed_surface(seed, truncated(seed.I), r_range);
}

ParamPatch seed_surface(const SeedData& seed, Interval s_range, Interval r_range) {
    auto ev = seed.eval;
    auto f = [ev](double s, double r) {
        const SeedJet j = ev(s);
        const double A = dot(j.gamma, j.d1);
        const double A1 = dot(j.d1, j.d1) + dot(j.gamma, j.d2);
        const double A2 = 3.0 * dot(j.d1, j.d2) + dot(j.gamma, j.d3);
        PatchJet p;
        p.x = j.gamma.x + r * j.d1.y;
        p.y = j.gamma.y - r * j.d1.x;
        p.t = j.h0 - 0.5 * r * A;
        p.xu = j.d1.x + r * j.d2.y;
        p.xv = j.d1.y;
        p.yu = j.d1.y - r * j.d2.x;
        p.yv = -j.d1.x;
        p.tu = j.h1 - 0.5 * r * A1;
        p.tv = -0.5 * A;
        p.xuu = j.d2.x + r * j.d3.y;
        p.xuv = j.d2.y;
        p.yuu = j.d2.y - r * j.d3.x;
        p.yuv = -j.d2.x;
        p.tuu = j.h2 - 0.5 * r * A2;
        p.tuv = -0.5 * A1;
        return p;
    };
    return ParamPatch(f, Rect{s_range.lo, s_range.hi, r_range.lo, r_range.hi});
}

Surface surface_from_strip(const GraphicalStrip& s) {
    Surface out;
    out.kind = "strip";
    out.strip = s;
    out.defining = strip_defining(s);
    GraphicalStrip sc = s;
    out.patch_factory = [sc](const Rect& w) {
        return strip_patch(sc, Interval{w.u0, w.u1}, Interval{w.v0, w.v1});
    };
    const Interval tw = truncated(s.I);
    out.default_window = Rect{-kDefaultTrunc, kDefaultTrunc, tw.lo, tw.hi};
    return out;
}

Surface graph_xy_new(const ScalarFn& f, const Rect& window) {
    if (f.arity() != 2) throw std::invalid_argument("graph_xy_new: f must be f(x, y)");
    Surface out;
    out.kind = "graph_xy";
    out.defining = DefiningFn(
        [f](const GroupPoint& g) {
            const Jet2 j = f.jet(g.x, g.y);
            AmbientJet a;
            a.v = g.t - j.v;
            a.gx = -j.x;
            a.gy = -j.y;
            a.gt = 1.0;
            a.hxx = -j.xx;
            a.hxy = -j.xy;
            a.hyy = -j.yy;
            return a;
        },
        1.0);
    out.patch_factory = [f](const Rect& w) {
        auto pj = [f](double x, double y) {
            const Jet2 j = f.jet(x, y);
            PatchJet p;
            p.x = x;
            p.y = y;
            p.t = j.v;
            p.xu = 1.0;
            p.yv = 1.0;
            p.tu = j.x;
            p.tv = j.y;
            p.tuu = j.xx;
            p.tuv = j.xy;
            p.tvv = j.yy;
            return p;
        };
        return ParamPatch(pj, w);
    };
    out.default_window = window;
    return out;
}

Surface graph_yt_new(const ScalarFn& psi, const Rect& window) {
    if (psi.arity() != 2) throw std::invalid_argument("graph_yt_new: psi must be psi(y, t)");
    Surface out;
    out.kind = "graph_yt";
    out.defining = DefiningFn(
        [psi](const GroupPoint& g) {
            const Jet2 j = psi.jet(g.y, g.t);
            AmbientJet a;
            a.v = g.x - j.v;
            a.gx = 1.0;
            a.gy = -j.x;
            a.gt = -j.y;
            a.hyy = -j.xx;
            a.hyt = -j.xy;
            a.htt = -j.yy;
            return a;
        },
        1.0);
    out.patch_factory = [psi](const Rect& w) {
        auto pj = [psi](double y, double t) {
            const Jet2 j = psi.jet(y, t);
            PatchJet p;
            p.x = j.v;
            p.y = y;
            p.t = t;
            p.xu = j.x;
            p.xv = j.y;
            p.yu = 1.0;
            p.tv = 1.0;
            p.xuu = j.xx;
            p.xuv = j.xy;
            p.xvv = j.yy;
            return p;
        };
        return ParamPatch(pj, w);
    };
    out.default_window = window;
    return out;
}

Surface type2_xygraph(double a, double b, const GroupPoint& g0, const ScalarFn& h0,
                      const Rect& window) {
    if (std::abs(a * a + b * b - 1.0) > 1e-12)
        throw std::invalid_argument("type2_xygraph: need a^2 + b^2 = 1");
    if (h0.arity() != 1) throw std::invalid_argument("type2_xygraph: h0 must be h0(s)");
    const double x0 = g0.x, y0 = g0.y, t0 = g0.t;
    // height over centered coordinates (x, y)
    auto height = [a, b, x0, y0, t0, h0](double x, double y) -> Jet2 {
        Jet2 jx = Jet2::var_x(x), jy = Jet2::var_y(y);
        Jet2 arg = a * jx + b * jy;
        const Jet1 h = h0.jet(arg.v);
        Jet2 hh = compose(arg, h.v, h.d1, h.d2, h.d3);
        return Jet2::constant(t0) - 0.5 * a * b * (jx * jx - jy * jy) -
               0.5 * (b * b - a * a) * (jx * jy) + hh + 0.5 * x0 * jy - 0.5 * jx * y0;
    };
    Surface out;
    out.kind = "type2";
    out.defining = DefiningFn(
        [height, x0, y0](const GroupPoint& g) {
            const Jet2 j = height(g.x - x0, g.y - y0);
            AmbientJet am;
            am.v = g.t - j.v;
            am.gx = -j.x;
            am.gy = -j.y;
            am.gt = 1.0;
            am.hxx = -j.xx;
            am.hxy = -j.xy;
            am.hyy = -j.yy;
            return am;
        },
        1.0);
    out.patch_factory = [height, x0, y0](const Rect& w) {
        auto pj = [height, x0, y0](double x, double y) {
            const Jet2 j = height(x, y);
            PatchJet p;
            p.x = x + x0;
            p.y = y + y0;
            p.t = j.v;
            p.xu = 1.0;
            p.yv = 1.0;
            p.tu = j.x;
            p.tv = j.y;
            p.tuu = j.xx;
            p.tuv = j.xy;
            p.tvv = j.yy;
            return p;
        };
        return ParamPatch(pj, w);
    };
    out.default_window = window;
    return out;
}

Surface vertical_plane(double a, double b, double gamma) {
    const double n2 = a * a + b * b;
    if (!(n2 > 0.0)) throw std::invalid_argument("vertical_plane: degenerate normal");
    const double n = std::sqrt(n2);
    Surface out;
    out.kind = "vertical_plane";
    out.defining = DefiningFn(
        [a, b, gamma](const GroupPoint& g) {
            AmbientJet am;
            am.v = a * g.x + b * g.y - gamma;
            am.gx = a;
            am.gy = b;
            return am;
        },
        n);
    const Vec2 p0{a * gamma / n2, b * gamma / n2};
    const Vec2 d{-b / n, a / n};
    out.patch_factory = [p0, d](const Rect& w) {
        auto pj = [p0, d](double u, double v) {
            PatchJet p;
            p.x = p0.x + u * d.x;
            p.y = p0.y + u * d.y;
            p.t = v;
            p.xu = d.x;
            p.yu = d.y;
            p.tv = 1.0;
            return p;
        };
        return ParamPatch(pj, w);
    };
    out.default_window = Rect{-kDefaultTrunc, kDefaultTrunc, -kDefaultTrunc, kDefaultTrunc};
    return out;
}

IntrinsicGraph vertical_plane_intrinsic(double a, double b, double gamma) {
    if (a == 0.0)
        throw std::invalid_argument("vertical_plane_intrinsic: needs a != 0");
    const double slope = -b / a, off = gamma / a;
    return IntrinsicGraph([slope, off](double u, double) {
        IntrinsicJet j;
        j.in_domain = true;
        j.phi = slope * u + off;
        j.pu = slope;
        return j;
    });
}

}  // namespace hbern
