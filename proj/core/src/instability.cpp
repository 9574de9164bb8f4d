#include "hbern/instability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hbern/bump.hpp"

#include <json.hpp>

namespace hbern {

namespace {
const QuadratureSpec kConvSpec{1e-12, 1e-16, 30};

// nested 15/7 pair, shared nodes across the four convolution components
struct Conv4 {
    double v[4] = {0, 0, 0, 0};
};

void conv4_adapt(const std::function<Conv4(double)>& f, double a, double b, double tol,
                 int depth, Conv4& sum) {
    static const double nodes[15] = {
        -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
        -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
        0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
        0.864864423359769,  0.949107912342759,  0.991455371120813};
    static const double wk[15] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
        0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
        0.104790010322250, 0.063092092629979, 0.022935322010529};
    static const double wg[15] = {
        0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0, 0.381830050505119, 0.0,
        0.417959183673469, 0.0, 0.381830050505119, 0.0, 0.279705391489277, 0.0,
        0.129484966168870, 0.0};
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double k15[4] = {0, 0, 0, 0}, g7[4] = {0, 0, 0, 0};
    for (int i = 0; i < 15; ++i) {
        const Conv4 y = f(c + h * nodes[i]);
        for (int j = 0; j < 4; ++j) {
            k15[j] += wk[i] * y.v[j];
            g7[j] += wg[i] * y.v[j];
        }
    }
    double err = 0.0, scale = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double diff = std::abs(k15[j] - g7[j]) * h;
        const double mag = std::abs(k15[j]) * h;
        // standard sharpened estimate for the nested pair
        const double e =
            diff * std::min(1.0, std::pow(200.0 * diff / std::max(1e-300, mag + diff), 1.5));
        err = std::max(err, e);
        scale = std::max(scale, mag);
    }
    if (err <= tol * std::max(1.0, scale) || depth >= 24) {
        for (int j = 0; j < 4; ++j) sum.v[j] += k15[j] * h;
        return;
    }
    conv4_adapt(f, a, c, 0.5 * tol, depth + 1, sum);
    conv4_adapt(f, c, b, 0.5 * tol, depth + 1, sum);
}
}  // namespace

Jet1 BumpFamily::chi(double s) const { return plateau_bump_jet(s, delta); }

Jet1 BumpFamily::chi_k(double s, int k) const {
    const Jet1 inner = chi(s / k);
    const double ik = 1.0 / k;
    return {inner.v, inner.d1 * ik, inner.d2 * ik * ik, inner.d3 * ik * ik * ik};
}

Jet1 BumpFamily::chi_hat(double s) const {
    const Jet1 b = window_bump_jet(s, -2.0 * delta, 2.0 * delta);
    return hat_norm * b;
}

Jet1 BumpFamily::chi_tilde(double s, int k) const {
    const Jet1 inner = chi_hat(k * s);
    const double dk = k;
    return {dk * inner.v, dk * inner.d1 * dk, dk * inner.d2 * dk * dk,
            dk * inner.d3 * dk * dk * dk};
}

BumpFamily make_bump_family(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("bump family: delta must be positive");
    BumpFamily b;
    b.delta = delta;
    b.hat_norm = 1.0;
    const QuadResult mass = integrate(
        [&b](double s) { return b.chi_hat(s).v; }, -2.0 * delta, 2.0 * delta, kConvSpec);
    b.hat_norm = 1.0 / mass.value;
    double sup = 0.0;
    const int n = 4096;
    for (int i = 0; i <= n; ++i) {
        const double s = -2.0 * delta + 4.0 * delta * i / n;
        sup = std::max(sup, std::abs(b.chi(s).d1));
    }
    b.deriv_bound = sup;
    return b;
}

MollifiedG::MollifiedG(ScalarFn G, BumpFamily bump, int k)
    : g_(std::move(G)), bump_(bump), k_(k) {
    if (k < 1) throw std::invalid_argument("MollifiedG: k must be >= 1");
}

Jet1 MollifiedG::jet(double t) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        const auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
    }
    const Jet1 out = compute(t);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(t, out);
    return out;
}

Jet1 MollifiedG::compute(double t) const {
    const double w = 2.0 * bump_.delta / k_;
    // value and first two derivatives under the integral; the third moves
    // one derivative onto the kernel, valid for C^2 G
    auto integrand = [&](double s) {
        const Jet1 g = g_.jet(t - s);
        const Jet1 kern = bump_.chi_tilde(s, k_);
        Conv4 c;
        c.v[0] = g.v * kern.v;
        c.v[1] = g.d1 * kern.v;
        c.v[2] = g.d2 * kern.v;
        c.v[3] = g.d2 * kern.d1;
        return c;
    };
    Conv4 sum;
    conv4_adapt(integrand, -w, w, kConvSpec.rel_tol, 0, sum);
    return {sum.v[0], sum.v[1], sum.v[2], sum.v[3]};
}

bool MollifiedG::dominate_holds(int t_samples) const {
    const double d = bump_.delta;
    for (int i = 0; i <= t_samples; ++i) {
        const double t = -2.0 * d + 4.0 * d * i / t_samples;
        const double gp = g_.jet(t).d1;
        const double gkp = d1(t);
        if (!(0.5 * gp <= gkp && gkp <= 2.0 * gp)) return false;
        // second line of the bracketing, sampled in y over the support scale
        for (int j = 0; j <= 8; ++j) {
            const double y = -2.0 * d * k_ + 4.0 * d * k_ * j / 8.0;
            const double base = 1.0 + 0.5 * y * y * gp;
            const double moll = 1.0 + 0.5 * y * y * gkp;
            if (!(0.5 * base <= moll && moll <= 2.0 * base)) return false;
        }
    }
    return true;
}

Rect fk_support(const BumpFamily& bump, int k) {
    return Rect{-2.0 * bump.delta * k, 2.0 * bump.delta * k, -2.0 * bump.delta,
                2.0 * bump.delta};
}

ParamField build_fk(const ScalarFn& G, const BumpFamily& bump, int k) {
    if (k < 2) throw std::invalid_argument("build_fk: k must be >= 2");
    const double d = bump.delta;
    for (int i = 0; i <= 64; ++i) {
        const double t = -2.0 * d + 4.0 * d * i / 64.0;
        if (!(G.jet(t).d1 > 0.0))
            throw NotStrictError("build_fk: G' must be positive on the window");
    }
    auto moll = std::make_shared<MollifiedG>(G, bump, k);
    const Rect sup = fk_support(bump, k);
    return [moll, bump, k, sup](double y, double t) -> FieldJet {
        if (y <= sup.u0 || y >= sup.u1 || t <= sup.v0 || t >= sup.v1) return FieldJet{};
        const Jet1 cy = bump.chi_k(y, k);
        const Jet1 ct = bump.chi(t);
        if (cy.v == 0.0 && cy.d1 == 0.0 && ct.v == 0.0 && ct.d1 == 0.0) return FieldJet{};
        const Jet1 gk = moll->jet(t);
        const double m = 1.0 + 0.5 * y * y * gk.d1;
        const double my = y * gk.d1, mt = 0.5 * y * y * gk.d2;
        const double myy = gk.d1, myt = y * gk.d2, mtt = 0.5 * y * y * gk.d3;
        const double R = 1.0 / std::sqrt(m);
        const double m32 = R / m, m52 = m32 / m;
        const double Ry = -0.5 * m32 * my;
        const double Rt = -0.5 * m32 * mt;
        const double Ryy = 0.75 * m52 * my * my - 0.5 * m32 * myy;
        const double Ryt = 0.75 * m52 * my * mt - 0.5 * m32 * myt;
        const double Rtt = 0.75 * m52 * mt * mt - 0.5 * m32 * mtt;
        FieldJet f;
        f.v = cy.v * ct.v * R;
        f.du = cy.d1 * ct.v * R + cy.v * ct.v * Ry;
        f.dv = cy.v * ct.d1 * R + cy.v * ct.v * Rt;
        f.duu = cy.d2 * ct.v * R + 2.0 * cy.d1 * ct.v * Ry + cy.v * ct.v * Ryy;
        f.duv = cy.d1 * ct.d1 * R + cy.d1 * ct.v * Rt + cy.v * ct.d1 * Ry +
                cy.v * ct.v * Ryt;
        f.dvv = cy.v * ct.d2 * R + 2.0 * cy.v * ct.d1 * Rt + cy.v * ct.v * Rtt;
        return f;
    };
}

ReverseSides reverse_inequality_sides(const ScalarFn& G, const BumpFamily& bump, int k,
                                      const QuadratureSpec& spec) {
    if (k < 2) throw std::invalid_argument("reverse_inequality_sides: k must be >= 2");
    const double d = bump.delta;
    MollifiedG moll(G, bump, k);
    QuadratureSpec outer = spec;
    outer.rel_tol = std::max(spec.rel_tol, 1e-9);
    QuadratureSpec inner = outer;
    inner.rel_tol = outer.rel_tol * 1e-2;
    const double ymax = 2.0 * d * k;

    auto side = [&](bool lhs_side) {
        auto outer_f = [&](double t) {
            const Jet1 g = G.jet(t);
            const double ct = bump.chi(t).v;
            if (ct == 0.0) return 0.0;
            const double gk1 = moll.d1(t);
            const double wt = std::sqrt(1.0 + g.v * g.v);
            auto inner_f = [&](double y) {
                const Jet1 cy = bump.chi_k(y, k);
                const double m = 1.0 + 0.5 * y * y * gk1;
                const double S = std::sqrt(m);
                if (lhs_side) {
                    const double fy = ct * (cy.d1 / S - cy.v * y * gk1 / (2.0 * m * S));
                    return (1.0 + 0.5 * y * y * g.d1) * fy * fy / wt;
                }
                const double f = cy.v * ct / S;
                return 2.0 * g.d1 * f * f / ((1.0 + 0.5 * y * y * g.d1) * wt);
            };
            // the window bump is even, so the y-integrand is even
            return 2.0 * integrate(inner_f, 0.0, ymax, inner).value;
        };
        return integrate(outer_f, -2.0 * d, 2.0 * d, outer);
    };
    const QuadResult L = side(true);
    const QuadResult R = side(false);
    return {L.value, R.value, L.error, R.error};
}

K0Result find_k0(const ScalarFn& G, const BumpFamily& bump, int k_max,
                 const QuadratureSpec& spec) {
    K0Result out;
    auto probe = [&](int k) -> K0Step {
        const ReverseSides s = reverse_inequality_sides(G, bump, k, spec);
        MollifiedG moll(G, bump, k);
        K0Step step{k, s.lhs, s.rhs, s.lhs_err, s.rhs_err, moll.dominate_holds()};
        out.trace.push_back(step);
        return step;
    };
    int prev_fail = 1;
    int found = -1;
    for (int k = 2; k <= k_max; k *= 2) {
        const K0Step s = probe(k);
        if (s.lhs < s.rhs && s.dominate) {
            found = k;
            break;
        }
        prev_fail = k;
    }
    if (found < 0) return out;
    // smallest tested k inside the doubling bracket
    int lo = prev_fail, hi = found;
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        const K0Step s = probe(mid);
        if (s.lhs < s.rhs && s.dominate)
            hi = mid;
        else
            lo = mid;
    }
    out.found = true;
    out.k0 = hi;
    return out;
}

std::string InstabilityCertificate::to_json_string() const {
    nlohmann::json j;
    auto end = [](double v) -> nlohmann::json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };
    j["G"] = g_source;
    j["I"] = {end(I.lo), end(I.hi)};
    j["J"] = {end(J.lo), end(J.hi)};
    j["t0"] = t0;
    j["delta"] = delta;
    j["k0"] = k0;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["gap"] = gap;
    j["v2"] = v2;
    j["quad_err"] = quad_err;
    j["h"] = h_description;
    return j.dump();
}

InstabilityCertificate certify_instability(const GraphicalStrip& strip,
                                           const QuadratureSpec& spec,
                                           std::optional<Interval> window_override,
                                           int k_max) {
    const GraphicalStrip s = strip_to_x_branch(strip);
    Interval J{};
    if (window_override.has_value()) {
        J = *window_override;
    } else if (s.strict_window.has_value()) {
        J = *s.strict_window;
    } else {
        throw NotStrictError("certify_instability: strip has no strict window");
    }
    // clamp an unbounded window to a finite certification span
    J.lo = std::max(J.lo, std::max(s.I.lo, -4.0));
    J.hi = std::min(J.hi, std::min(s.I.hi, 4.0));
    if (!(J.lo < J.hi))
        throw NotStrictError("certify_instability: empty strict window");

    InstabilityCertificate cert;
    cert.g_source = s.G.valid() ? s.G.print() : "";
    cert.I = s.I;
    cert.J = J;
    cert.t0 = 0.5 * (J.lo + J.hi);
    cert.delta = (J.hi - J.lo) / 8.0;

    const ScalarFn Gc = shift_arg(s.G, cert.t0);
    const BumpFamily bump = make_bump_family(cert.delta);
    for (int i = 0; i <= 128; ++i) {
        const double t = -4.0 * cert.delta + 8.0 * cert.delta * i / 128.0;
        if (!(Gc.jet(t).d1 > 0.0))
            throw NotStrictError("certify_instability: G' not positive on the window");
    }

    const K0Result k0 = find_k0(Gc, bump, k_max, spec);
    if (!k0.found) {
        std::ostringstream os;
        os << "certify_instability: no k <= " << k_max << " with lhs < rhs; last (lhs, rhs)";
        if (!k0.trace.empty())
            os << " = (" << k0.trace.back().lhs << ", " << k0.trace.back().rhs << ")";
        throw K0ExhaustedError(os.str());
    }
    cert.k0 = k0.k0;
    ReverseSides sides{};
    bool have_sides = false;
    for (const auto& step : k0.trace)
        if (step.k == k0.k0) {
            sides = {step.lhs, step.rhs, step.lhs_err, step.rhs_err};
            have_sides = true;
        }
    if (!have_sides) sides = reverse_inequality_sides(Gc, bump, cert.k0, spec);
    cert.lhs = sides.lhs;
    cert.rhs = sides.rhs;
    cert.gap = sides.lhs - sides.rhs;

    GraphicalStrip recentered;
    recentered.G = Gc;
    recentered.I = {s.I.lo - cert.t0, s.I.hi - cert.t0};
    recentered.branch = StripBranch::X;
    recentered.strict_window = Interval{-4.0 * cert.delta, 4.0 * cert.delta};
    const ParamField fk = build_fk(Gc, bump, cert.k0);
    cert.v2 = strip_second_variation(recentered, fk, StripVariationMode::Normal,
                                     fk_support(bump, cert.k0), spec);
    cert.quad_err = sides.lhs_err + sides.rhs_err;

    std::ostringstream hd;
    hd << "h_k(x,y,t) = chi_k(y) chi(t) chi_k(x - y G(t)) / sqrt(1 + (y^2/2) G_k'(t)),"
       << " k = " << cert.k0 << ", delta = " << cert.delta << ", recentered at t0 = "
       << cert.t0;
    cert.h_description = hd.str();
    return cert;
}

}  // namespace hbern
