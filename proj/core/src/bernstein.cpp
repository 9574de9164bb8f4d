#include "hbern/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace hbern {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- quintic Hermite dense output -------------------------------------

struct Quintic {
    // coefficients of sum c_i xi^i on [0, 1]
    double c[6];
    static Quintic fit(double h, double p0, double m0, double a0, double p1, double m1,
                       double a1) {
        // value, first and second derivative data at both ends
        const double M0 = m0 * h, A0 = a0 * h * h, M1 = m1 * h, A1 = a1 * h * h;
        Quintic q;
        q.c[0] = p0;
        q.c[1] = M0;
        q.c[2] = 0.5 * A0;
        q.c[3] = 10.0 * (p1 - p0) - 6.0 * M0 - 4.0 * M1 - 1.5 * A0 + 0.5 * A1;
        q.c[4] = -15.0 * (p1 - p0) + 8.0 * M0 + 7.0 * M1 + 1.5 * A0 - A1;
        q.c[5] = 6.0 * (p1 - p0) - 3.0 * (M0 + M1) - 0.5 * A0 + 0.5 * A1;
        return q;
    }
    void eval(double xi, double h, double& v, double& d1, double& d2, double& d3) const {
        double p = 0, dp = 0, ddp = 0, dddp = 0;
        for (int i = 5; i >= 0; --i) {
            dddp = dddp * xi + 3.0 * ddp;
            ddp = ddp * xi + 2.0 * dp;
            dp = dp * xi + p;
            p = p * xi + c[i];
        }
        v = p;
        d1 = dp / h;
        d2 = ddp / (h * h);
        d3 = dddp / (h * h * h);
    }
};

struct TraceNode {
    double s;
    Vec2 g, d1, d2;
    double h0, h1, h2;
};

class TracedSeed {
public:
    explicit TracedSeed(std::vector<TraceNode> nodes) : nodes_(std::move(nodes)) {}

    SeedJet eval(double s) const {
        if (nodes_.size() < 2) throw std::domain_error("traced seed: too few nodes");
        if (s < nodes_.front().s - 1e-12 || s > nodes_.back().s + 1e-12)
            throw std::domain_error("traced seed evaluated outside its arc window");
        const auto it = std::lower_bound(nodes_.begin() + 1, nodes_.end() - 1, s,
                                         [](const TraceNode& n, double v) { return n.s < v; });
        const size_t i = static_cast<size_t>(it - nodes_.begin());
        const TraceNode& a = nodes_[i - 1];
        const TraceNode& b = nodes_[i];
        const double h = b.s - a.s;
        const double xi = std::clamp((s - a.s) / h, 0.0, 1.0);
        SeedJet j;
        auto comp = [&](double p0, double m0, double a0, double p1, double m1, double a1,
                        double& v, double& d1, double& d2, double& d3) {
            Quintic::fit(h, p0, m0, a0, p1, m1, a1).eval(xi, h, v, d1, d2, d3);
        };
        comp(a.g.x, a.d1.x, a.d2.x, b.g.x, b.d1.x, b.d2.x, j.gamma.x, j.d1.x, j.d2.x, j.d3.x);
        comp(a.g.y, a.d1.y, a.d2.y, b.g.y, b.d1.y, b.d2.y, j.gamma.y, j.d1.y, j.d2.y, j.d3.y);
        comp(a.h0, a.h1, a.h2, b.h0, b.h1, b.h2, j.h0, j.h1, j.h2, j.h3);
        return j;
    }

private:
    std::vector<TraceNode> nodes_;
};

// planar horizontal Gauss map of the graph t = f(x, y) and its Jacobian
struct SeedField {
    GraphFn2 f;
    double char_floor;

    Vec2 dir(Vec2 z) const {
        const Jet2 j = f(z.x, z.y);
        const double p = -j.x - 0.5 * z.y;
        const double q = -j.y + 0.5 * z.x;
        const double w = std::hypot(p, q);
        if (w < char_floor * (1.0 + std::abs(p) + std::abs(q)) || w < 1e-300)
            throw std::domain_error("seed_trace: characteristic point encountered");
        return {p / w, q / w};
    }
    // derivative of the normalized field applied to the unit tangent
    Vec2 curvature_vec(Vec2 z) const {
        const Jet2 j = f(z.x, z.y);
        const double p = -j.x - 0.5 * z.y;
        const double q = -j.y + 0.5 * z.x;
        const double w = std::hypot(p, q);
        const double px = -j.xx, py = -j.xy - 0.5;
        const double qx = -j.xy + 0.5, qy = -j.yy;
        const Vec2 nu{p / w, q / w};
        // D(nu) = (I - nu nu^T) DV / w, applied to nu
        const double Vx = px * nu.x + py * nu.y;
        const double Vy = qx * nu.x + qy * nu.y;
        const double proj = nu.x * Vx + nu.y * Vy;
        return {(Vx - proj * nu.x) / w, (Vy - proj * nu.y) / w};
    }
};

std::vector<TraceNode> rk4_trace(const SeedField& field, Vec2 z0, double L, double h) {
    const int n = std::max(2, static_cast<int>(std::ceil(std::abs(L) / h)));
    const double step = L / n;  // signed
    std::vector<TraceNode> nodes;
    nodes.reserve(n + 1);
    Vec2 z = z0;
    for (int i = 0; i <= n; ++i) {
        const double s = step * i;
        TraceNode nd;
        nd.s = s;
        nd.g = z;
        nd.d1 = field.dir(z);
        nd.d2 = field.curvature_vec(z);
        const Jet2 j = field.f(z.x, z.y);
        nd.h0 = j.v;
        nd.h1 = j.x * nd.d1.x + j.y * nd.d1.y;
        nd.h2 = j.xx * nd.d1.x * nd.d1.x + 2.0 * j.xy * nd.d1.x * nd.d1.y +
                j.yy * nd.d1.y * nd.d1.y + j.x * nd.d2.x + j.y * nd.d2.y;
        nodes.push_back(nd);
        if (i == n) break;
        const Vec2 k1 = field.dir(z);
        const Vec2 k2 = field.dir(z + 0.5 * step * k1);
        const Vec2 k3 = field.dir(z + 0.5 * step * k2);
        const Vec2 k4 = field.dir(z + step * k3);
        z = z + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return nodes;
}

}  // namespace

RuleLine rule_line(const SeedData& seed, double s) {
    const SeedJet j = seed.eval(s);
    RuleLine r;
    r.base = {j.gamma.x, j.gamma.y, j.h0};
    const Vec2 d = perp(j.d1);
    r.direction = {d.x, d.y, -0.5 * dot(j.gamma, j.d1)};
    return r;
}

SeedData translate_seed(const GroupPoint& g0, const SeedData& seed) {
    SeedData out;
    out.I = seed.I;
    auto ev = seed.eval;
    const double x0 = g0.x, y0 = g0.y, t0 = g0.t;
    out.eval = [ev, x0, y0, t0](double s) {
        SeedJet j = ev(s);
        // height gains the constant t0 so the translated surface identity
        // g0 o F(s, r) holds for every g0, not only t0 = 0
        j.h0 += t0 + 0.5 * x0 * j.gamma.y - 0.5 * y0 * j.gamma.x;
        j.h1 += 0.5 * x0 * j.d1.y - 0.5 * y0 * j.d1.x;
        j.h2 += 0.5 * x0 * j.d2.y - 0.5 * y0 * j.d2.x;
        j.h3 += 0.5 * x0 * j.d3.y - 0.5 * y0 * j.d3.x;
        j.gamma.x += x0;
        j.gamma.y += y0;
        return j;
    };
    return out;
}

double coplanarity_residual(const SeedData& seed, double s_ref, double s) {
    const SeedJet a = seed.eval(s_ref);
    const SeedJet b = seed.eval(s);
    return 0.5 * (a.d1.x * dot(b.gamma, b.d1) - b.d1.x * dot(a.gamma, a.d1));
}

SeedClassification classify_seed(const SeedData& seed, Interval J, double tol) {
    const int n = 64;
    std::vector<SeedJet> js(n + 1);
    double gmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        js[i] = seed.eval(J.lo + J.length() * i / n);
        gmax = std::max({gmax, std::abs(js[i].gamma.x), std::abs(js[i].gamma.y)});
    }
    const double scale = 1.0 + gmax;
    const double eps = tol * scale;
    const double s_ref = J.contains(0.0) ? 0.0 : 0.5 * (J.lo + J.hi);
    const SeedJet ref = seed.eval(s_ref);

    SeedClassification c;
    for (int i = 0; i <= n; ++i) {
        const double s = J.lo + J.length() * i / n;
        c.coplanarity = std::max(c.coplanarity,
                                 std::abs(coplanarity_residual(seed, s_ref, s)));
    }

    // straight-line residual against gamma(s_ref) + (s - s_ref) gamma'(s_ref)
    for (int i = 0; i <= n; ++i) {
        const double s = J.lo + J.length() * i / n;
        const Vec2 pred = ref.gamma + (s - s_ref) * ref.d1;
        c.line_residual = std::max(c.line_residual, norm(js[i].gamma - pred));
    }

    const bool ref_deg =
        std::abs(ref.d1.x) < eps && std::abs(dot(ref.gamma, ref.d1)) < eps;
    if (ref_deg && c.line_residual >= 0.0) {
        // rule through s_ref projects to a single (y,t)-point
        c.kind = SeedClassification::Kind::NotAGraph;
        c.residual = std::abs(ref.d1.x) + std::abs(dot(ref.gamma, ref.d1));
        return c;
    }

    if (c.line_residual < eps) {
        c.kind = SeedClassification::Kind::Line;
        c.line_dir = ref.d1;
        c.line_base = ref.gamma - s_ref * ref.d1;
        c.residual = c.line_residual;
        // circle residual left as the distance to the best centered circle
        double rmean = 0.0;
        for (const auto& j : js) rmean += norm(j.gamma);
        rmean /= (n + 1);
        for (const auto& j : js)
            c.circle_residual = std::max(c.circle_residual, std::abs(norm(j.gamma) - rmean));
        return c;
    }

    double max_gg = 0.0;
    for (const auto& j : js) max_gg = std::max(max_gg, std::abs(dot(j.gamma, j.d1)));
    if (max_gg < eps) {
        // |gamma| is constant: circular arc about the origin
        double rmean = 0.0;
        for (const auto& j : js) rmean += norm(j.gamma);
        rmean /= (n + 1);
        c.kind = SeedClassification::Kind::Circle;
        c.center = {0.0, 0.0};
        c.radius = rmean;
        for (const auto& j : js)
            c.circle_residual = std::max(c.circle_residual, std::abs(norm(j.gamma) - rmean));
        c.residual = c.circle_residual;
        return c;
    }

    // off-center branch: gamma1' = C gamma.gamma', |gamma|^2 = (2/C) gamma1 + C0
    const double denom = dot(ref.gamma, ref.d1);
    if (std::abs(denom) < eps || std::abs(ref.d1.x) < eps) {
        c.kind = SeedClassification::Kind::NotAGraph;
        c.residual = std::min(std::abs(denom), std::abs(ref.d1.x));
        return c;
    }
    c.C = ref.d1.x / denom;
    double c0 = 0.0;
    for (const auto& j : js) c0 += dot(j.gamma, j.gamma) - (2.0 / c.C) * j.gamma.x;
    c.C0 = c0 / (n + 1);
    double res = 0.0;
    for (const auto& j : js) {
        res = std::max(res, std::abs(j.d1.x - c.C * dot(j.gamma, j.d1)));
        res = std::max(res,
                       std::abs(dot(j.gamma, j.gamma) - (2.0 / c.C) * j.gamma.x - c.C0));
    }
    c.kind = SeedClassification::Kind::Circle;
    c.center = {1.0 / c.C, 0.0};
    const double r2 = 1.0 / (c.C * c.C) + c.C0;
    c.radius = r2 > 0.0 ? std::sqrt(r2) : 0.0;
    c.circle_residual = res;
    c.residual = res;
    return c;
}

double line_seed_characteristic(const SeedData& seed, double s) {
    const SeedJet j = seed.eval(s);
    return j.h1 + 0.5 * (j.d1.x * j.gamma.y - j.d1.y * j.gamma.x);
}

SeedData seed_trace(const GraphFn2& f, Vec2 z0, double arc_each_way,
                    const TraceOptions& opts) {
    SeedField field{f, opts.char_floor};
    double h = opts.base_step;
    std::vector<TraceNode> fwd, bwd;
    for (int attempt = 0;; ++attempt) {
        fwd = rk4_trace(field, z0, arc_each_way, h);
        bwd = rk4_trace(field, z0, -arc_each_way, h);
        const auto fwd2 = rk4_trace(field, z0, arc_each_way, 0.5 * h);
        const double dev = std::max(norm(fwd.back().g - fwd2.back().g), 0.0);
        if (dev <= opts.tol_per_unit * std::max(1.0, arc_each_way) || attempt >= 8) {
            if (attempt >= 8 && dev > 1e3 * opts.tol_per_unit)
                throw std::runtime_error("seed_trace: step control failed to converge");
            fwd = fwd2;
            bwd = rk4_trace(field, z0, -arc_each_way, 0.5 * h);
            break;
        }
        h *= 0.5;
    }
    std::vector<TraceNode> nodes(bwd.rbegin(), bwd.rend());
    nodes.pop_back();
    nodes.insert(nodes.end(), fwd.begin(), fwd.end());
    auto traced = std::make_shared<TracedSeed>(std::move(nodes));
    SeedData out;
    out.I = {-arc_each_way, arc_each_way};
    out.eval = [traced](double s) { return traced->eval(s); };
    return out;
}

namespace {

// local (x,y)-graph of x = psi(y,t) by inverting in t; second-order jets,
// third-order entries not populated
class ImplicitXYGraph {
public:
    ImplicitXYGraph(ScalarFn psi, Interval t_window, double t_hint)
        : psi_(std::move(psi)), tw_(t_window), hint_(t_hint) {}

    Jet2 operator()(double x, double y) const {
        double t = solve(x, y);
        hint_ = t;
        const Jet2 p = psi_.jet(y, t);  // variables (y, t)
        const double pt = p.y, py = p.x;
        const double ptt = p.yy, pty = p.xy, pyy = p.xx;
        if (std::abs(pt) < 1e-14)
            throw std::domain_error("implicit graph: psi_t vanished along the trace");
        Jet2 out;
        out.v = t;
        out.x = 1.0 / pt;
        out.y = -py / pt;
        out.xx = -ptt * out.x * out.x / pt;
        out.xy = -out.x * (pty + ptt * out.y) / pt;
        out.yy = -(pyy + 2.0 * pty * out.y + ptt * out.y * out.y) / pt;
        return out;
    }

private:
    double solve(double x, double y) const {
        double t = hint_;
        auto F = [&](double tt) { return psi_(y, tt) - x; };
        // Newton from the running hint
        for (int it = 0; it < 50; ++it) {
            const Jet2 p = psi_.jet(y, t);
            const double f = p.v - x;
            const double fp = p.y;
            if (std::abs(fp) < 1e-14) break;
            const double tn = t - f / fp;
            if (tn < tw_.lo || tn > tw_.hi) break;
            if (std::abs(tn - t) < 1e-15 * (1.0 + std::abs(t))) return tn;
            t = tn;
        }
        // expanding bracket around the hint
        double w = 1e-3 * (1.0 + std::abs(hint_));
        double lo = hint_, hi = hint_;
        double flo = F(lo), fhi = flo;
        for (int it = 0; it < 60 && flo * fhi > 0.0; ++it) {
            lo = std::max(tw_.lo, hint_ - w);
            hi = std::min(tw_.hi, hint_ + w);
            flo = F(lo);
            fhi = F(hi);
            if (flo * fhi <= 0.0) break;
            if (lo == tw_.lo && hi == tw_.hi)
                throw std::domain_error("implicit graph: point left the chart");
            w *= 2.0;
        }
        if (flo * fhi > 0.0)
            throw std::domain_error("implicit graph: no root in the t-window");
        for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
            const double m = 0.5 * (lo + hi);
            if (F(lo) * F(m) <= 0.0)
                hi = m;
            else
                lo = m;
        }
        return 0.5 * (lo + hi);
    }

    ScalarFn psi_;
    Interval tw_;
    mutable double hint_;
};

class ReducedProfileFn final : public detail::FnImpl {
public:
    ReducedProfileFn(std::shared_ptr<const SeedData> seed, double s_ref, double theta_ref,
                     double orient, double radius, Interval theta_window)
        : seed_(std::move(seed)),
          s_ref_(s_ref),
          th_ref_(theta_ref),
          orient_(orient),
          R_(radius),
          thw_(theta_window) {}

    int arity() const override { return 1; }

    Jet1 jet1(double t) const override {
        const double theta = invert(t);
        const SeedJet sj = seed_->eval(s_of(theta));
        // height as a function of the canonical angle
        const double H1 = sj.h1 * R_ * orient_;
        const double H2 = sj.h2 * R_ * R_;
        const double H3 = sj.h3 * R_ * R_ * R_ * orient_;
        const double tp = 1.0 / H1;
        const double tpp = -H2 * tp * tp / H1;
        const double tppp = -(H3 * tp * tp * tp + 3.0 * H2 * tp * tpp) / H1;
        return cot(Jet1{theta, tp, tpp, tppp});
    }
    Jet2 jet2(double, double) const override {
        throw DomainError("arity mismatch: expected 2 variables", print());
    }
    std::string print() const override { return "cot(height_profile_inverse(t))"; }

private:
    double s_of(double theta) const { return s_ref_ + orient_ * R_ * (theta - th_ref_); }
    double height(double theta) const { return seed_->eval(s_of(theta)).h0; }

    double invert(double t) const {
        // height is strictly decreasing on the window
        double lo = thw_.lo, hi = thw_.hi;
        if (!(height(lo) >= t && height(hi) <= t)) {
            const double m = 1e-12 * (1.0 + std::abs(t));
            if (t > height(lo) + m || t < height(hi) - m)
                throw DomainError("t outside the reduced profile window", print());
        }
        for (int it = 0; it < 100 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (height(mid) >= t)
                lo = mid;
            else
                hi = mid;
        }
        double theta = 0.5 * (lo + hi);
        for (int it = 0; it < 2; ++it) {
            const SeedJet sj = seed_->eval(s_of(theta));
            const double H1 = sj.h1 * R_ * orient_;
            const double step = (sj.h0 - t) / H1;
            const double cand = theta - step;
            if (cand > thw_.lo && cand < thw_.hi) theta = cand;
        }
        return theta;
    }

    std::shared_ptr<const SeedData> seed_;
    double s_ref_, th_ref_, orient_, R_;
    Interval thw_;
};

}  // namespace

ReductionResult extract_strip(const ScalarFn& psi, const ReduceOptions& opts) {
    ReductionResult res;
    auto fail = [&res](const std::string& stage, const std::string& why) -> ReductionResult& {
        res.ok = false;
        res.failure_stage = stage;
        res.reason = why;
        res.stages.push_back({stage, false, 0.0, why});
        return res;
    };
    auto pass = [&res](const std::string& stage, double value, const std::string& detail) {
        res.stages.push_back({stage, true, value, detail});
    };

    if (psi.arity() != 2) {
        fail("input", "psi must be a function of (y, t)");
        return res;
    }
    const Rect pr = opts.probe;
    const Surface surf = graph_yt_new(psi, pr);

    // H-minimality and characteristic freeness on the probe grid
    const int n = 16;
    double maxH = 0.0, max_pt = 0.0, minW = std::numeric_limits<double>::infinity();
    double best_pt = 0.0, by = 0, bt = 0;
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            const double y = pr.u0 + (pr.u1 - pr.u0) * i / n;
            const double t = pr.v0 + (pr.v1 - pr.v0) * j / n;
            const Jet2 pj = psi.jet(y, t);
            const GroupPoint g{pj.v, y, t};
            const FrameData f = frame_from_defining(*surf.defining, g);
            minW = std::min(minW, f.W);
            if (!f.characteristic) maxH = std::max(maxH, std::abs(hmean(*surf.defining, g)));
            max_pt = std::max(max_pt, std::abs(pj.y));
            const double edge = std::min({static_cast<double>(i), static_cast<double>(n - i),
                                          static_cast<double>(j), static_cast<double>(n - j)});
            const double score = std::abs(pj.y) * (0.5 + edge / n);
            if (score > best_pt) {
                best_pt = score;
                by = y;
                bt = t;
            }
        }
    if (minW <= 1e-9) {
        fail("minimality", "characteristic point inside the probe window");
        return res;
    }
    if (maxH > opts.minimality_tol) {
        std::ostringstream os;
        os << "max |H| = " << maxH << " exceeds " << opts.minimality_tol;
        fail("minimality", os.str());
        return res;
    }
    pass("minimality", maxH, "max |H| over the probe grid");

    if (max_pt < opts.vertical_tol) {
        fail("vertical_plane", "psi_t vanishes identically: vertical plane");
        return res;
    }
    pass("vertical_plane", max_pt, "max |psi_t| over the probe grid");

    // local (x,y)-graph around the best probe point
    const double x_at = psi(by, bt);
    const Interval t_window{pr.v0 - 0.1 * (pr.v1 - pr.v0), pr.v1 + 0.1 * (pr.v1 - pr.v0)};
    auto impl = std::make_shared<ImplicitXYGraph>(psi, t_window, bt);
    GraphFn2 fxy = [impl](double x, double y) { return (*impl)(x, y); };
    pass("xy_graph", x_at, "implicit chart anchored at the best probe point");

    SeedData seed;
    double arc = opts.arc;
    bool traced = false;
    for (int attempt = 0; attempt < 5 && !traced; ++attempt) {
        try {
            seed = seed_trace(fxy, {x_at, by}, arc, opts.trace);
            traced = true;
        } catch (const std::exception&) {
            arc *= 0.5;
        }
    }
    if (!traced) {
        fail("seed_trace", "trace left the chart or met a characteristic point");
        return res;
    }
    pass("seed_trace", arc, "arc length traced each way");

    const Interval J{-0.95 * arc, 0.95 * arc};
    const SeedClassification cls = classify_seed(seed, J, opts.classify_tol);
    if (cls.kind == SeedClassification::Kind::Line) {
        const double s_ref = 0.0;
        const double rstar = line_seed_characteristic(seed, s_ref);
        const ParamPatch p = seed_surface(seed, J, Interval{rstar - 1.0, rstar + 1.0});
        res.char_W = frame_from_patch(p, s_ref, rstar).W;
        std::ostringstream os;
        os << "line seed: W(s, r*) = " << res.char_W
           << " vanishes on the rule, contradicting an empty characteristic locus";
        fail("classification", os.str());
        return res;
    }
    if (cls.kind == SeedClassification::Kind::NotAGraph) {
        fail("classification", "rule projects to a single point: not a graph");
        return res;
    }
    if (!(cls.radius > 0.0) || cls.residual > 1e-5 * (1.0 + cls.radius)) {
        std::ostringstream os;
        os << "circle fit residual " << cls.residual << " too large";
        fail("classification", os.str());
        return res;
    }
    pass("classification", cls.residual, "seed is a circular arc");
    res.radius = cls.radius;
    res.applied_translation = {-cls.center.x, -cls.center.y};

    const SeedData centered =
        translate_seed(GroupPoint{-cls.center.x, -cls.center.y, 0.0}, seed);

    // canonical angle along the centered circle
    const int m = 64;
    std::vector<double> ss(m + 1), th(m + 1);
    for (int i = 0; i <= m; ++i) {
        ss[i] = J.lo + J.length() * i / m;
        const SeedJet j = centered.eval(ss[i]);
        double a = std::atan2(j.gamma.y, j.gamma.x);
        if (i > 0) {
            while (a - th[i - 1] > kPi) a -= 2.0 * kPi;
            while (a - th[i - 1] < -kPi) a += 2.0 * kPi;
        }
        th[i] = a;
    }
    const double orient = th[m] > th[0] ? 1.0 : -1.0;
    const double th_lo = std::min(th[0], th[m]), th_hi = std::max(th[0], th[m]);

    // largest angular window avoiding the rays {0, +-pi} with margin
    const double margin = 1e-3;
    Interval best{0.0, 0.0};
    for (int kk = -2; kk <= 2; ++kk) {
        const double cands[2][2] = {{2.0 * kPi * kk + margin, 2.0 * kPi * kk + kPi - margin},
                                    {2.0 * kPi * kk - kPi + margin, 2.0 * kPi * kk - margin}};
        for (const auto& cd : cands) {
            const double lo = std::max(th_lo, cd[0]);
            const double hi = std::min(th_hi, cd[1]);
            if (hi - lo > best.length()) best = {lo, hi};
        }
    }
    if (!(best.length() > 0.0)) {
        fail("window", "traced arc does not meet the half-turn angular windows");
        return res;
    }
    pass("window", best.length(), "angular window within a half turn");

    // injectivity of the height along the canonical angle
    const double s_ref = ss[0], th_ref = th[0];
    auto s_of = [&](double theta) { return s_ref + orient * cls.radius * (theta - th_ref); };
    double hmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= m; ++i) {
        const double theta = best.lo + best.length() * i / m;
        const SeedJet j = centered.eval(s_of(theta));
        const double Hp = j.h1 * cls.radius * orient;
        hmax = std::max(hmax, Hp);
    }
    if (!(hmax < 0.0)) {
        std::ostringstream os;
        os << "height profile not strictly decreasing along the canonical angle (max H' = "
           << hmax << ")";
        fail("injectivity", os.str());
        return res;
    }
    pass("injectivity", hmax, "height profile strictly decreasing");

    auto seed_copy = std::make_shared<const SeedData>(centered);
    auto fn = ScalarFn(std::make_shared<ReducedProfileFn>(seed_copy, s_ref, th_ref, orient,
                                                          cls.radius, best));
    const double t_hi_end = centered.eval(s_of(best.lo)).h0;
    const double t_lo_end = centered.eval(s_of(best.hi)).h0;
    const Interval It{std::min(t_lo_end, t_hi_end), std::max(t_lo_end, t_hi_end)};
    const double shrink = 1e-6 * (1.0 + It.length());
    res.strip_t_window = {It.lo + shrink, It.hi - shrink};
    res.strip = strip_new(fn, res.strip_t_window, StripBranch::X);
    if (!res.strip.strict_window.has_value()) {
        fail("strip", "recovered profile is not strictly increasing");
        return res;
    }
    pass("strip", res.strip_t_window.length(), "strict graphical strip recovered");
    res.ok = true;
    return res;
}

}  // namespace hbern
