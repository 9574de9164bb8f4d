#include <doctest.h>

#include <cmath>
#include <limits>

#include "hbern/frame.hpp"
#include "hbern/group.hpp"
#include "hbern/highdim.hpp"
#include "hbern/surface.hpp"
#include "oracles.hpp"

using namespace hbern;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("hcalc") {

TEST_CASE("frame data basics") {
    // the plane x = 0 as a patch (0, y, t)
    const Surface pl = vertical_plane(1.0, 0.0, 0.0);
    const FrameData f = frame_from_patch(pl.patch(), 0.4, -1.1);
    CHECK(f.p == 1.0);
    CHECK(f.q == 0.0);
    CHECK(f.omega == 0.0);
    CHECK(f.W == 1.0);
    CHECK(!f.characteristic);
    CHECK(f.pbar == 1.0);

    // t = x y / 2 graph: p = -y, q = 0
    const Surface g = graph_xy_new(parse("x*y/2", {"x", "y"}), Rect{-2, 2, -2, 2});
    auto rnd = oracle::rng(41);
    for (int i = 0; i < 100; ++i) {
        const double x = oracle::uniform(rnd, -2, 2), y = oracle::uniform(rnd, -2, 2);
        const GroupPoint p{x, y, x * y / 2};
        const FrameData fd = frame_from_defining(*g.defining, p);
        CHECK(oracle::close_rel(fd.p, -y, 1e-13));
        CHECK(std::abs(fd.q) < 1e-13);
        // norms of the bars
        if (!fd.characteristic)
            CHECK(std::abs(fd.pbar * fd.pbar + fd.qbar * fd.qbar - 1.0) < 1e-12);
        // W^2 = p^2 + q^2 within a few ulp
        CHECK(std::abs(fd.W * fd.W - (fd.p * fd.p + fd.q * fd.q)) <=
              4e-16 * (fd.p * fd.p + fd.q * fd.q + 1e-300));
    }
}

TEST_CASE("strips are H-minimal along every route") {
    auto rnd = oracle::rng(42);
    for (const char* name : {"tan_tanh", "cot_shift", "square_pos"}) {
        const BuiltinFn b = builtin(name);
        const GraphicalStrip s = strip_new(b.fn, b.domain);
        const DefiningFn phi = strip_defining(s);
        const double tlo = std::max(b.domain.lo + 0.15, -1.3);
        const double thi = std::min(b.domain.hi - 0.15, 1.3);
        const ParamPatch patch = strip_patch(s, {-5, 5}, {tlo, thi});
        for (int i = 0; i < 200; ++i) {
            const double y = oracle::uniform(rnd, -5, 5);
            const double t = oracle::uniform(rnd, tlo, thi);
            const GroupPoint gp = patch.eval(y, t).point();
            CHECK(std::abs(hmean(phi, gp)) < 1e-11);
            CHECK(std::abs(hmean(patch, y, t)) < 1e-10);
            CHECK(std::abs(hmean_strip(s, y, t)) < 1e-11);
        }
    }
    // affine strips too
    const GraphicalStrip aff = strip_new(builtin_affine(2.0, -1.0).fn, {-kInf, kInf});
    const DefiningFn phi = strip_defining(aff);
    for (int i = 0; i < 100; ++i) {
        const double y = oracle::uniform(rnd, -5, 5), t = oracle::uniform(rnd, -3, 3);
        CHECK(std::abs(hmean(phi, {y * (2 * t - 1), y, t})) < 1e-11);
    }
}

TEST_CASE("xy graph of the bilinear height is minimal off its singular line") {
    const Surface g = graph_xy_new(parse("x*y/2", {"x", "y"}), Rect{-2, 2, -2, 2});
    auto rnd = oracle::rng(43);
    for (int i = 0; i < 200; ++i) {
        const double x = oracle::uniform(rnd, -2, 2);
        double y = oracle::uniform(rnd, -2, 2);
        if (std::abs(y) < 1e-2) y = 0.5;
        CHECK(std::abs(hmean(*g.defining, {x, y, x * y / 2})) < 1e-11);
    }
    CHECK_THROWS_AS(hmean(*g.defining, {0.3, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("curvature of the circular cylinder") {
    const ParamPatch p = circle_cylinder_patch(2.0, {0, 2 * M_PI}, {-1, 1});
    auto rnd = oracle::rng(44);
    for (int i = 0; i < 100; ++i) {
        const double a = oracle::uniform(rnd, 0, 2 * M_PI), t = oracle::uniform(rnd, -1, 1);
        CHECK(hmean(p, a, t) == doctest::Approx(0.5).epsilon(1e-10));
    }
}

TEST_CASE("three-route curvature agreement on strict strips") {
    const BuiltinFn tt = builtin_tan_tanh();
    const GraphicalStrip s = strip_new(tt.fn, tt.domain);
    const DefiningFn phi = strip_defining(s);
    const IntrinsicGraph ig = strip_to_intrinsic(s);
    auto rnd = oracle::rng(45);
    for (int i = 0; i < 200; ++i) {
        const double y = oracle::uniform(rnd, -4, 4), t = oracle::uniform(rnd, -2, 2);
        const GroupPoint gp{y * tt.fn(t), y, t};
        const double h1 = hmean(phi, gp);
        // common point in the intrinsic chart
        const double u = y, v = t + 0.5 * y * y * tt.fn(t);
        const double h3 = hmean_intrinsic(ig, u, v);
        CHECK(std::abs(h1) < 1e-8);
        CHECK(std::abs(h3) < 1e-8);
        CHECK(std::abs(h1 - h3) < 1e-7);
    }
}

TEST_CASE("Burgers operator values") {
    // converted strip: B phi = G at the matched parameter
    const BuiltinFn tt = builtin_tan_tanh();
    const IntrinsicGraph ig = strip_to_intrinsic(strip_new(tt.fn, tt.domain));
    auto rnd = oracle::rng(46);
    for (int i = 0; i < 200; ++i) {
        const double y = oracle::uniform(rnd, -4, 4), t = oracle::uniform(rnd, -2, 2);
        const double u = y, v = t + 0.5 * y * y * tt.fn(t);
        const BurgersValues b = burgers(ig, u, v);
        CHECK(oracle::close_rel(b.B, tt.fn(t), 1e-8));
        CHECK(std::abs(b.BB) < 1e-8);
    }

    // closed rational family: B = 2(alpha v + beta)/(2 + alpha u^2), BB = 0
    const double alpha = 1.0, beta = 0.5;
    const IntrinsicGraph ir = intrinsic_from_fn(parse("2*u*(v + 0.5)/(2 + u^2)", {"u", "v"}));
    for (int i = 0; i < 200; ++i) {
        const double u = oracle::uniform(rnd, -4, 4), v = oracle::uniform(rnd, -4, 4);
        const BurgersValues b = burgers(ir, u, v);
        const double expect = 2.0 * (alpha * v + beta) / (2.0 + alpha * u * u);
        CHECK(oracle::close_rel(b.B, expect, 1e-11));
        CHECK(std::abs(b.BB) < 1e-11);
        // independent finite-difference check of the first derivatives
        const ScalarFn f = parse("2*u*(v + 0.5)/(2 + u^2)", {"u", "v"});
        const double pu = oracle::fd1([&](double s) { return f(s, v); }, u);
        const double pv = oracle::fd1([&](double s) { return f(u, s); }, v);
        CHECK(std::abs(b.B - (pu + f(u, v) * pv)) < 1e-6);
    }

    // constant field: transport vanishes
    const IntrinsicGraph ic = intrinsic_from_fn(parse("0*u + 0*v + 3", {"u", "v"}));
    CHECK(burgers(ic, 0.3, 0.4).B == 0.0);
    CHECK(hmean_intrinsic(ic, 0.3, 0.4) == 0.0);
}

TEST_CASE("curvature of a generic non-minimal graph against the quasilinear form") {
    // for t = f(x,y): H W^3 = -(f_y - x/2)^2 f_xx
    //                         + 2 (f_x + y/2)(f_y - x/2) f_xy - (f_x + y/2)^2 f_yy
    const ScalarFn f = parse("x^2 + y^3/3 - x*y", {"x", "y"});
    const Surface g = graph_xy_new(f, Rect{-2, 2, -2, 2});
    auto rnd = oracle::rng(48);
    for (int i = 0; i < 300; ++i) {
        const double x = oracle::uniform(rnd, -2, 2), y = oracle::uniform(rnd, -2, 2);
        const Jet2 j = f.jet(x, y);
        const double p = -(j.x + 0.5 * y), q = -(j.y - 0.5 * x);
        const double W = std::hypot(p, q);
        if (W < 1e-2) continue;
        const double rhs = (-(j.y - 0.5 * x) * (j.y - 0.5 * x) * j.xx +
                            2.0 * (j.x + 0.5 * y) * (j.y - 0.5 * x) * j.xy -
                            (j.x + 0.5 * y) * (j.x + 0.5 * y) * j.yy) /
                           (W * W * W);
        const double H = hmean(*g.defining, {x, y, f(x, y)});
        CHECK(oracle::close_rel(H, rhs, 1e-11));
    }
}

TEST_CASE("intrinsic route equals the patch route on a curved intrinsic graph") {
    const ScalarFn phi = parse("u^2/4 + sin(v)/2", {"u", "v"});
    const IntrinsicGraph ig = intrinsic_from_fn(phi);
    // ambient chart (phi, u, v - u phi / 2) of the same surface
    auto chart = [&phi](double u, double v) {
        const Jet2 j = phi.jet(u, v);
        PatchJet p;
        p.x = j.v;
        p.y = u;
        p.t = v - 0.5 * u * j.v;
        p.xu = j.x;
        p.xv = j.y;
        p.yu = 1.0;
        p.tu = -0.5 * (j.v + u * j.x);
        p.tv = 1.0 - 0.5 * u * j.y;
        p.xuu = j.xx;
        p.xuv = j.xy;
        p.xvv = j.yy;
        p.tuu = -0.5 * (2.0 * j.x + u * j.xx);
        p.tuv = -0.5 * (j.y + u * j.xy);
        p.tvv = -0.5 * u * j.yy;
        return p;
    };
    const ParamPatch patch(chart, Rect{-2, 2, -2, 2});
    auto rnd = oracle::rng(49);
    for (int i = 0; i < 300; ++i) {
        const double u = oracle::uniform(rnd, -2, 2), v = oracle::uniform(rnd, -2, 2);
        const double hi = hmean_intrinsic(ig, u, v);
        const double hp = hmean(patch, u, v);
        CHECK(oracle::close_rel(hi, hp, 1e-9));
    }
}

TEST_CASE("perimeter is invariant under left translations and rotations") {
    const BuiltinFn tt = builtin_tan_tanh();
    const ParamPatch sp = strip_patch(strip_new(tt.fn, tt.domain), {-2, 2}, {-1, 1});
    const double base = h_perimeter(sp);

    const GroupPoint g0{0.8, -1.3, 0.7};
    auto translated = [sp, g0](double u, double v) {
        PatchJet j = sp.eval(u, v);
        const GroupPoint moved = compose(g0, j.point());
        // d t' = d t + (x0 dy - y0 dx) / 2
        auto fix = [&](double& td, double xd, double yd) {
            td += 0.5 * (g0.x * yd - g0.y * xd);
        };
        fix(j.tu, j.xu, j.yu);
        fix(j.tv, j.xv, j.yv);
        fix(j.tuu, j.xuu, j.yuu);
        fix(j.tuv, j.xuv, j.yuv);
        fix(j.tvv, j.xvv, j.yvv);
        j.x = moved.x;
        j.y = moved.y;
        j.t = moved.t;
        return j;
    };
    CHECK(oracle::close_rel(h_perimeter(ParamPatch(translated, sp.domain())), base, 1e-10));

    const double th = 0.6;
    auto rotated = [sp, th](double u, double v) {
        PatchJet j = sp.eval(u, v);
        const double c = std::cos(th), s = std::sin(th);
        auto rot = [&](double& x, double& y) {
            const double xr = c * x - s * y, yr = s * x + c * y;
            x = xr;
            y = yr;
        };
        rot(j.x, j.y);
        rot(j.xu, j.yu);
        rot(j.xv, j.yv);
        rot(j.xuu, j.yuu);
        rot(j.xuv, j.yuv);
        rot(j.xvv, j.yvv);
        return j;
    };
    CHECK(oracle::close_rel(h_perimeter(ParamPatch(rotated, sp.domain())), base, 1e-10));
}

TEST_CASE("Z, Y, T derivatives") {
    // plane x = 0: Z zeta = -zeta_y
    const Surface pl = vertical_plane(1.0, 0.0, 0.0);
    const AmbientScalar zeta = [](const GroupPoint& g) {
        return AmbientJet1{g.y * g.y + g.t, 0.0, 2.0 * g.y, 1.0};
    };
    const ZYT z = zyt_derivatives(*pl.defining, {0.0, 0.7, 0.2}, zeta);
    CHECK(z.Z == doctest::Approx(-1.4));
    CHECK(z.Y == doctest::Approx(-0.35));  // X1 zeta = zeta_x - (y/2) zeta_t
    CHECK(z.T == doctest::Approx(1.0));

    // strip identities for the normalized frame fields
    const BuiltinFn tt = builtin_tan_tanh();
    const GraphicalStrip s = strip_new(tt.fn, tt.domain);
    const DefiningFn phi = strip_defining(s);
    auto rnd = oracle::rng(47);
    for (int i = 0; i < 300; ++i) {
        const double y = oracle::uniform(rnd, -4, 4), t = oracle::uniform(rnd, -2, 2);
        const GroupPoint gp{y * tt.fn(t), y, t};
        const FrameDerivs d = frame_derivs(phi, gp);
        const Jet1 g = tt.fn.jet(t);
        CHECK(std::abs(d.Ypbar) < 1e-12);
        CHECK(std::abs(d.Yqbar) < 1e-12);
        const double expect_tq = -g.d1 / (d.f.W * (1.0 + g.v * g.v));
        CHECK(oracle::close_rel(d.Tqbar, expect_tq, 1e-10));
        const double expect_tp = -g.v * g.d1 / (d.f.W * (1.0 + g.v * g.v));
        CHECK(oracle::close_rel(d.Tpbar, expect_tp, 1e-10));
        // orthogonality and the tangential-gradient identity
        CHECK(d.f.pbar * d.f.qbar - d.f.qbar * d.f.pbar == 0.0);
        // mean curvature through the tangential route
        const double mc = d.f.qbar * d.Zpbar - d.f.pbar * d.Zqbar;
        CHECK(std::abs(mc - d.H) < 1e-8);
    }
}

TEST_CASE("perimeter quadrature") {
    // unit window of the plane x = 0
    const Surface pl = vertical_plane(1.0, 0.0, 0.0);
    const ParamPatch pp = pl.patch(Rect{0, 1, 0, 1});
    CHECK(h_perimeter(pp) == doctest::Approx(1.0).epsilon(1e-12));

    // strip area against a dense trapezoid oracle
    const BuiltinFn tt = builtin_tan_tanh();
    const GraphicalStrip s = strip_new(tt.fn, tt.domain);
    const ParamPatch sp = strip_patch(s, {-2, 2}, {-1, 1});
    const double mine = h_perimeter(sp);
    const double ref = oracle::trapezoid2d(
        [&](double y, double t) {
            const Jet1 g = tt.fn.jet(t);
            return std::sqrt(1.0 + g.v * g.v) * (1.0 + 0.5 * y * y * g.d1);
        },
        -2, 2, -1, 1, 1000);
    CHECK(oracle::close_rel(mine, ref, 1e-6));  // trapezoid is second order
    // doubled-resolution trapezoid agrees better, confirming convergence
    const double ref2 = oracle::trapezoid2d(
        [&](double y, double t) {
            const Jet1 g = tt.fn.jet(t);
            return std::sqrt(1.0 + g.v * g.v) * (1.0 + 0.5 * y * y * g.d1);
        },
        -2, 2, -1, 1, 2000);
    CHECK(std::abs(mine - ref2) < std::abs(mine - ref) + 1e-12);

    // adaptive error estimate is honest against a tighter run
    QuadratureSpec loose;
    loose.rel_tol = 1e-6;
    const QuadResult r1 = sigma_h_integral(sp, [](double, double) { return 1.0; }, loose);
    const QuadResult r2 = sigma_h_integral(sp, [](double, double) { return 1.0; }, {});
    CHECK(std::abs(r1.value - r2.value) <= std::max(r1.error, 1e-12));
}

TEST_CASE("dilation scaling of the perimeter") {
    const BuiltinFn tt = builtin_tan_tanh();
    const GraphicalStrip s = strip_new(tt.fn, tt.domain);
    const ParamPatch sp = strip_patch(s, {-2, 2}, {-1, 1});
    for (const double lam : {0.5, 2.0, 3.0}) {
        auto dil = [sp, lam](double u, double v) {
            PatchJet j = sp.eval(u, v);
            j.x *= lam; j.y *= lam; j.t *= lam * lam;
            j.xu *= lam; j.xv *= lam; j.yu *= lam; j.yv *= lam;
            j.tu *= lam * lam; j.tv *= lam * lam;
            j.xuu *= lam; j.xuv *= lam; j.xvv *= lam;
            j.yuu *= lam; j.yuv *= lam; j.yvv *= lam;
            j.tuu *= lam * lam; j.tuv *= lam * lam; j.tvv *= lam * lam;
            return j;
        };
        const ParamPatch dp(dil, sp.domain());
        const double base = h_perimeter(sp);
        const double scaled = h_perimeter(dp);
        const int expo = homogeneous_dimension(1) - 1;
        CHECK(oracle::close_rel(scaled, std::pow(lam, expo) * base, 1e-9));
    }
}

TEST_CASE("reference integral of the squared Cauchy-like kernel") {
    for (const double a : {0.1, 1.0, 10.0}) {
        const double span = 5000.0 / std::sqrt(std::min(1.0, a));
        const QuadResult r = integrate(
            [a](double y) {
                const double d = 2.0 + a * y * y;
                return 1.0 / (d * d);
            },
            -span, span, {1e-11, 1e-16, 40});
        const double expect = std::sqrt(2.0) * M_PI / (8.0 * std::sqrt(a));
        CHECK(oracle::close_rel(r.value, expect, 1e-8));
    }
}

TEST_CASE("characteristic scans") {
    const BuiltinFn tt = builtin_tan_tanh();
    const ParamPatch sp = strip_patch(strip_new(tt.fn, tt.domain), {-4, 4}, {-2, 2});
    CHECK(characteristic_scan(sp, 32, 1e-6).empty());

    const Surface g = graph_xy_new(parse("x*y/2", {"x", "y"}), Rect{-2, 2, -2, 2});
    const auto pts = characteristic_scan(g.patch(), 32, 1e-7);
    REQUIRE(!pts.empty());
    for (const auto& c : pts) CHECK(std::abs(c.v) < 1e-7);  // v-parameter is y

    // non-vertical plane: the single characteristic point of the graph chart
    const ScalarFn f = parse("(4 - x - y)/2", {"x", "y"});
    const Surface pg = graph_xy_new(f, Rect{-3, 3, -3, 3});
    const auto zs = characteristic_scan(pg.patch(), 48, 1e-7);
    REQUIRE(zs.size() == 1);
    const auto expect = plane_characteristic_point({1, 1, 2, 4});
    CHECK(zs[0].u == doctest::Approx(expect->x).epsilon(1e-6));
    CHECK(zs[0].v == doctest::Approx(expect->y).epsilon(1e-6));
}

}  // TEST_SUITE
