#include "hbern/variation.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "hbern/bump.hpp"
#include "hbern/parallel.hpp"

namespace hbern {

namespace {

bool inside(const Rect& r, double u, double v) {
    return u > r.u0 && u < r.u1 && v > r.v0 && v < r.v1;
}

FieldJet product_jet(const Jet1& fu, const Jet1& fv, double amp) {
    FieldJet f;
    f.v = amp * fu.v * fv.v;
    f.du = amp * fu.d1 * fv.v;
    f.dv = amp * fu.v * fv.d1;
    f.duu = amp * fu.d2 * fv.v;
    f.duv = amp * fu.d1 * fv.d1;
    f.dvv = amp * fu.v * fv.d2;
    return f;
}

/// First-order data of the correction A = (a, b, k - a y/2 + b x/2).
struct Correction {
    double x = 0, y = 0, t = 0;
    double xu = 0, xv = 0, yu = 0, yv = 0, tu = 0, tv = 0;
};

Correction correction_first_order(const PatchJet& j, const FieldJet& a, const FieldJet& b,
                                  const FieldJet& k) {
    Correction c;
    c.x = a.v;
    c.y = b.v;
    c.t = k.v - 0.5 * a.v * j.y + 0.5 * b.v * j.x;
    c.xu = a.du;
    c.xv = a.dv;
    c.yu = b.du;
    c.yv = b.dv;
    c.tu = k.du - 0.5 * (a.du * j.y + a.v * j.yu) + 0.5 * (b.du * j.x + b.v * j.xu);
    c.tv = k.dv - 0.5 * (a.dv * j.y + a.v * j.yv) + 0.5 * (b.dv * j.x + b.v * j.xv);
    return c;
}

double deformed_W(const PatchJet& j, const Correction& c, double lambda) {
    const double x = j.x + lambda * c.x;
    const double y = j.y + lambda * c.y;
    const double xu = j.xu + lambda * c.xu, xv = j.xv + lambda * c.xv;
    const double yu = j.yu + lambda * c.yu, yv = j.yv + lambda * c.yv;
    const double tu = j.tu + lambda * c.tu, tv = j.tv + lambda * c.tv;
    const double om = xu * yv - xv * yu;
    const double p = yu * tv - yv * tu - 0.5 * y * om;
    const double q = xv * tu - xu * tv + 0.5 * x * om;
    return std::hypot(p, q);
}

double support_diameter(const Rect& s) {
    return std::hypot(s.u1 - s.u0, s.v1 - s.v0);
}

// Difference integrands are O(1) pointwise even when their integral
// cancels to zero, so the absolute tolerance must be anchored to the
// integrand magnitude rather than to the (near-zero) integral.
QuadratureSpec anchored_spec(const QuadratureSpec& spec,
                             const std::function<double(double, double)>& f, const Rect& r) {
    double m = 0.0;
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) {
            const double u = r.u0 + (r.u1 - r.u0) * i / 8.0;
            const double v = r.v0 + (r.v1 - r.v0) * j / 8.0;
            m = std::max(m, std::abs(f(u, v)));
        }
    QuadratureSpec out = spec;
    out.rel_tol = std::min(spec.rel_tol, 1e-11);
    out.abs_floor = std::max(spec.abs_floor, 1e-12 * m * r.area());
    return out;
}

}  // namespace

ParamField zero_field() {
    return [](double, double) { return FieldJet{}; };
}

ParamField bump_field(const Rect& support, double amp) {
    return [support, amp](double u, double v) -> FieldJet {
        if (!inside(support, u, v)) return FieldJet{};
        return product_jet(window_bump_jet(u, support.u0, support.u1),
                           window_bump_jet(v, support.v0, support.v1), amp);
    };
}

ParamField modulated_bump_field(const Rect& support, double amp, double cu, double cv,
                                double phase) {
    return [support, amp, cu, cv, phase](double u, double v) -> FieldJet {
        if (!inside(support, u, v)) return FieldJet{};
        const Jet1 bu = window_bump_jet(u, support.u0, support.u1);
        const Jet1 bv = window_bump_jet(v, support.v0, support.v1);
        // mod = cos(cu u + cv v + phase), expanded in each variable
        const double ph = cu * u + cv * v + phase;
        const double cs = std::cos(ph), sn = std::sin(ph);
        const Jet1 mu = {cs, -sn * cu, -cs * cu * cu, sn * cu * cu * cu};
        FieldJet f = product_jet(bu * mu, bv, amp);
        // cross terms of the modulation in v
        FieldJet g;
        g.v = f.v;
        g.du = f.du;
        g.duu = f.duu;
        g.dv = amp * (bu.v * (-sn * cv) * bv.v + bu.v * cs * bv.d1);
        g.duv = amp * ((bu.d1 * (-sn * cv) + bu.v * (-cs * cu * cv)) * bv.v +
                       (bu.d1 * cs + bu.v * (-sn * cu)) * bv.d1);
        g.dvv = amp * (bu.v * (-cs * cv * cv) * bv.v + 2.0 * bu.v * (-sn * cv) * bv.d1 +
                       bu.v * cs * bv.d2);
        return g;
    };
}

void check_deformation_support(const Deformation& X, const Rect& domain) {
    if (X.support.u0 < domain.u0 || X.support.u1 > domain.u1 || X.support.v0 < domain.v0 ||
        X.support.v1 > domain.v1)
        throw std::invalid_argument("deformation support not inside the patch domain");
    const int n = 64;
    for (int i = 0; i <= n; ++i) {
        const double fu = X.support.u0 + (X.support.u1 - X.support.u0) * i / n;
        const double fv = X.support.v0 + (X.support.v1 - X.support.v0) * i / n;
        const double edges[4][2] = {{fu, X.support.v0},
                                    {fu, X.support.v1},
                                    {X.support.u0, fv},
                                    {X.support.u1, fv}};
        for (const auto& e : edges) {
            const double va = X.a(e[0], e[1]).v;
            const double vb = X.b(e[0], e[1]).v;
            const double vk = X.k(e[0], e[1]).v;
            if (std::abs(va) > 1e-14 || std::abs(vb) > 1e-14 || std::abs(vk) > 1e-14)
                throw std::invalid_argument(
                    "deformation fields do not vanish on the support boundary");
        }
    }
}

ParamPatch deform(const ParamPatch& patch, const Deformation& X, double lambda) {
    check_deformation_support(X, patch.domain());
    const ParamPatch base = patch;
    const Deformation def = X;
    auto f = [base, def, lambda](double u, double v) -> PatchJet {
        PatchJet j = base.eval(u, v);
        if (lambda == 0.0) return j;
        const FieldJet a = def.a(u, v), b = def.b(u, v), k = def.k(u, v);
        const Correction c = correction_first_order(j, a, b, k);
        PatchJet out = j;
        out.x += lambda * c.x;
        out.y += lambda * c.y;
        out.t += lambda * c.t;
        out.xu += lambda * c.xu;
        out.xv += lambda * c.xv;
        out.yu += lambda * c.yu;
        out.yv += lambda * c.yv;
        out.tu += lambda * c.tu;
        out.tv += lambda * c.tv;
        // second partials of the correction
        out.xuu += lambda * a.duu;
        out.xuv += lambda * a.duv;
        out.xvv += lambda * a.dvv;
        out.yuu += lambda * b.duu;
        out.yuv += lambda * b.duv;
        out.yvv += lambda * b.dvv;
        const double tuu = k.duu - 0.5 * (a.duu * j.y + 2.0 * a.du * j.yu + a.v * j.yuu) +
                           0.5 * (b.duu * j.x + 2.0 * b.du * j.xu + b.v * j.xuu);
        const double tuv = k.duv -
                           0.5 * (a.duv * j.y + a.du * j.yv + a.dv * j.yu + a.v * j.yuv) +
                           0.5 * (b.duv * j.x + b.du * j.xv + b.dv * j.xu + b.v * j.xuv);
        const double tvv = k.dvv - 0.5 * (a.dvv * j.y + 2.0 * a.dv * j.yv + a.v * j.yvv) +
                           0.5 * (b.dvv * j.x + 2.0 * b.dv * j.xv + b.v * j.xvv);
        out.tuu += lambda * tuu;
        out.tuv += lambda * tuv;
        out.tvv += lambda * tvv;
        return out;
    };
    return ParamPatch(f, patch.domain());
}

Deformation normal_deformation(const ParamPatch& patch, const ParamField& h,
                               const Rect& support) {
    const ParamPatch base = patch;
    const Rect sup = support;
    // first-order exact; second partials filled by central differences
    auto field = [base, sup, h](bool want_p) {
        return [base, sup, h, want_p](double u, double v) -> FieldJet {
            if (!inside(sup, u, v)) return FieldJet{};
            auto first = [&](double uu, double vv, double out[3]) {
                const FieldJet hh = h(uu, vv);
                const PatchFrame r = patch_frame(base.eval(uu, vv));
                const double bar = want_p ? r.f.pbar : r.f.qbar;
                const double bu = want_p ? r.pbu : r.qbu;
                const double bv = want_p ? r.pbv : r.qbv;
                out[0] = hh.v * bar;
                out[1] = hh.du * bar + hh.v * bu;
                out[2] = hh.dv * bar + hh.v * bv;
            };
            double c[3];
            first(u, v, c);
            FieldJet f;
            f.v = c[0];
            f.du = c[1];
            f.dv = c[2];
            const double eu = 6e-6 * (1.0 + std::abs(u));
            const double ev = 6e-6 * (1.0 + std::abs(v));
            double up[3], um[3], vp[3], vm[3];
            first(u + eu, v, up);
            first(u - eu, v, um);
            first(u, v + ev, vp);
            first(u, v - ev, vm);
            f.duu = (up[1] - um[1]) / (2.0 * eu);
            f.duv = (vp[1] - vm[1]) / (2.0 * ev);
            f.dvv = (vp[2] - vm[2]) / (2.0 * ev);
            return f;
        };
    };
    Deformation X;
    X.a = field(true);
    X.b = field(false);
    X.k = zero_field();
    X.support = support;
    return X;
}

Deformation x1_deformation(const ParamField& a, const Rect& support) {
    Deformation X;
    X.a = a;
    X.b = zero_field();
    X.k = zero_field();
    X.support = support;
    return X;
}

Deformation frame_deformation(const ParamField& a, const ParamField& b, const ParamField& k,
                              const Rect& support) {
    Deformation X;
    X.a = a;
    X.b = b;
    X.k = k;
    X.support = support;
    return X;
}

std::vector<ProfilePoint> perimeter_profile(const ParamPatch& patch, const Deformation& X,
                                            const std::vector<double>& lambdas,
                                            const QuadratureSpec& spec) {
    check_deformation_support(X, patch.domain());
    std::vector<ProfilePoint> out(lambdas.size());
    const int workers = std::min<int>(worker_cap(), static_cast<int>(lambdas.size()));
    auto run = [&](size_t i) {
        const ParamPatch def = deform(patch, X, lambdas[i]);
        const QuadResult r = sigma_h_integral(
            def, [](double, double) { return 1.0; }, spec);
        out[i] = {lambdas[i], r.value, r.error};
    };
    if (workers <= 1) {
        for (size_t i = 0; i < lambdas.size(); ++i) run(i);
    } else {
        std::vector<std::future<void>> fs;
        for (int w = 0; w < workers; ++w)
            fs.push_back(std::async(std::launch::async, [&, w] {
                for (size_t i = w; i < lambdas.size(); i += workers) run(i);
            }));
        for (auto& f : fs) f.get();
    }
    return out;
}

VariationValue first_variation_numeric(const ParamPatch& patch, const Deformation& X,
                                       const QuadratureSpec& spec, const FdOptions& fd) {
    check_deformation_support(X, patch.domain());
    const double h = fd.scale * support_diameter(X.support);
    auto diff = [&](double step) {
        auto integrand = [&](double u, double v) {
            const PatchJet j = patch.eval(u, v);
            const FieldJet a = X.a(u, v), b = X.b(u, v), k = X.k(u, v);
            const Correction c = correction_first_order(j, a, b, k);
            return (deformed_W(j, c, step) - deformed_W(j, c, -step)) / (2.0 * step);
        };
        return integrate2d(integrand, X.support, anchored_spec(spec, integrand, X.support));
    };
    const QuadResult d1 = diff(h);
    const QuadResult d2 = diff(0.5 * h);
    VariationValue out;
    out.value = (4.0 * d2.value - d1.value) / 3.0;
    out.uncertainty = std::abs(d2.value - d1.value) / 3.0 + d1.error + d2.error;
    return out;
}

VariationValue first_variation_formula(const ParamPatch& patch,
                                       const std::optional<DefiningFn>& phi,
                                       const Deformation& X, const QuadratureSpec& spec) {
    check_deformation_support(X, patch.domain());
    auto integrand = [&](double u, double v) {
        const PatchJet j = patch.eval(u, v);
        const FrameData f = frame_from_patchjet(j);
        if (f.characteristic)
            throw std::domain_error("first_variation_formula: characteristic point in support");
        const double H = phi.has_value() ? frame_derivs(*phi, j.point()).H : hmean(patch, u, v);
        const FieldJet a = X.a(u, v), b = X.b(u, v), k = X.k(u, v);
        return H * (a.v * f.p + b.v * f.q + k.v * f.omega);
    };
    const QuadResult r = integrate2d(integrand, X.support, spec);
    return {r.value, r.error};
}

VariationValue second_variation_numeric(const ParamPatch& patch, const Deformation& X,
                                        const QuadratureSpec& spec, const FdOptions& fd) {
    check_deformation_support(X, patch.domain());
    const double h = fd.scale * support_diameter(X.support);
    auto stencil = [&](double step) {
        auto integrand = [&](double u, double v) {
            const PatchJet j = patch.eval(u, v);
            const FieldJet a = X.a(u, v), b = X.b(u, v), k = X.k(u, v);
            const Correction c = correction_first_order(j, a, b, k);
            const double w0 = deformed_W(j, c, 0.0);
            const double wp = deformed_W(j, c, step), wm = deformed_W(j, c, -step);
            const double wp2 = deformed_W(j, c, 2.0 * step), wm2 = deformed_W(j, c, -2.0 * step);
            return (-wp2 + 16.0 * wp - 30.0 * w0 + 16.0 * wm - wm2) / (12.0 * step * step);
        };
        return integrate2d(integrand, X.support, anchored_spec(spec, integrand, X.support));
    };
    const QuadResult s1 = stencil(h);
    const QuadResult s2 = stencil(0.5 * h);
    VariationValue out;
    out.value = (16.0 * s2.value - s1.value) / 15.0;
    out.uncertainty = std::abs(s2.value - s1.value) / 15.0 + s1.error + s2.error;
    return out;
}

double second_variation_normal_formula(const ParamPatch& patch, const DefiningFn& phi,
                                       const AmbientScalar& h, const Rect& support,
                                       const QuadratureSpec& spec) {
    auto integrand = [&](double u, double v) {
        const PatchJet j = patch.eval(u, v);
        const double Wm = frame_from_patchjet(j).W;  // measure weight
        const FrameDerivs d = frame_derivs(phi, j.point());
        const AmbientJet1 hz = h(j.point());
        const double X1h = hz.gx - 0.5 * j.y * hz.gt;
        const double X2h = hz.gy + 0.5 * j.x * hz.gt;
        const double Zh = d.f.qbar * X1h - d.f.pbar * X2h;
        const double bracket = 2.0 * (d.f.pbar * d.Tqbar - d.f.qbar * d.Tpbar) +
                               2.0 * d.f.obar * (d.f.qbar * d.Ypbar - d.f.pbar * d.Yqbar) +
                               d.f.obar * d.f.obar;
        return (Zh * Zh + hz.v * hz.v * bracket) * Wm;
    };
    const QuadResult r = integrate2d(integrand, support, spec);
    return r.value;
}

double second_variation_x1_formula(const ParamPatch& patch, const DefiningFn& phi,
                                   const AmbientScalar& a, const Rect& support,
                                   const QuadratureSpec& spec) {
    auto integrand = [&](double u, double v) {
        const PatchJet j = patch.eval(u, v);
        const double Wm = frame_from_patchjet(j).W;
        const FrameDerivs d = frame_derivs(phi, j.point());
        const AmbientJet1 az = a(j.point());
        const double X1a = az.gx - 0.5 * j.y * az.gt;
        const double X2a = az.gy + 0.5 * j.x * az.gt;
        const double Za = d.f.qbar * X1a - d.f.pbar * X2a;
        const double Ya = d.f.pbar * X1a + d.f.qbar * X2a;
        const double Ta = az.gt;
        const double pb = d.f.pbar, qb = d.f.qbar, ob = d.f.obar;
        const double val = pb * pb * Za * Za + pb * pb * ob * ob * az.v * az.v +
                           ob * 2.0 * az.v * Za -
                           pb * qb * (2.0 * az.v * Ta - ob * 2.0 * az.v * Ya);
        return val * Wm;
    };
    const QuadResult r = integrate2d(integrand, support, spec);
    return r.value;
}

double strip_second_variation(const GraphicalStrip& strip, const ParamField& u,
                              StripVariationMode mode, const Rect& support,
                              const QuadratureSpec& spec) {
    const GraphicalStrip s = strip_to_x_branch(strip);
    if (support.v0 < s.I.lo - 1e-12 || support.v1 > s.I.hi + 1e-12)
        throw std::invalid_argument("strip_second_variation: support outside R x I");
    const double expo = mode == StripVariationMode::Normal ? 0.5 : 1.5;
    const ScalarFn G = s.G;
    auto integrand = [&](double y, double t) {
        const Jet1 g = G.jet(t);
        const double wt = std::pow(1.0 + g.v * g.v, expo);
        const double den = 1.0 + 0.5 * y * y * g.d1;
        const FieldJet uj = u(y, t);
        return (den * uj.du * uj.du - 2.0 * uj.v * uj.v * g.d1 / den) / wt;
    };
    const QuadResult r = integrate2d(integrand, support, spec);
    return r.value;
}

}  // namespace hbern
