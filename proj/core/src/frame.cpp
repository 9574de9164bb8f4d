#include "hbern/frame.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hbern {

namespace {
void finish(FrameData& f) {
    f.W = std::hypot(f.p, f.q);
    f.normN = std::sqrt(f.p * f.p + f.q * f.q + f.omega * f.omega);
    f.eps_char = 1e-9 * (1.0 + f.normN);
    f.characteristic = f.W <= f.eps_char;
    if (!f.characteristic) {
        f.pbar = f.p / f.W;
        f.qbar = f.q / f.W;
        f.obar = f.omega / f.W;
    }
}
}  // namespace

FrameData frame_from_patchjet(const PatchJet& j) {
    FrameData f;
    const double om = j.xu * j.yv - j.xv * j.yu;
    f.p = j.yu * j.tv - j.yv * j.tu - 0.5 * j.y * om;
    f.q = j.xv * j.tu - j.xu * j.tv + 0.5 * j.x * om;
    f.omega = om;
    finish(f);
    return f;
}

FrameData frame_from_patch(const ParamPatch& patch, double u, double v) {
    return frame_from_patchjet(patch.eval(u, v));
}

FrameData frame_from_ambient(const AmbientJet& a, const GroupPoint& g) {
    FrameData f;
    f.p = a.gx - 0.5 * g.y * a.gt;
    f.q = a.gy + 0.5 * g.x * a.gt;
    f.omega = a.gt;
    finish(f);
    return f;
}

FrameData frame_from_defining(const DefiningFn& phi, const GroupPoint& g) {
    const AmbientJet a = phi.eval(g);
    if (a.gx * a.gx + a.gy * a.gy + a.gt * a.gt == 0.0)
        throw std::domain_error("frame_from_defining: vanishing Riemannian normal");
    return frame_from_ambient(a, g);
}

PatchFrame patch_frame(const PatchJet& j) {
    PatchFrame r;
    r.f = frame_from_patchjet(j);
    const double om = r.f.omega;
    r.wu = j.xuu * j.yv + j.xu * j.yuv - j.xuv * j.yu - j.xv * j.yuu;
    r.wv = j.xuv * j.yv + j.xu * j.yvv - j.xvv * j.yu - j.xv * j.yuv;
    r.pu = j.yuu * j.tv + j.yu * j.tuv - j.yuv * j.tu - j.yv * j.tuu -
           0.5 * j.yu * om - 0.5 * j.y * r.wu;
    r.pv = j.yuv * j.tv + j.yu * j.tvv - j.yvv * j.tu - j.yv * j.tuv -
           0.5 * j.yv * om - 0.5 * j.y * r.wv;
    r.qu = j.xuv * j.tu + j.xv * j.tuu - j.xuu * j.tv - j.xu * j.tuv +
           0.5 * j.xu * om + 0.5 * j.x * r.wu;
    r.qv = j.xvv * j.tu + j.xv * j.tuv - j.xuv * j.tv - j.xu * j.tvv +
           0.5 * j.xv * om + 0.5 * j.x * r.wv;
    if (!r.f.characteristic) {
        const double W = r.f.W, p = r.f.p, q = r.f.q;
        r.Wu = (p * r.pu + q * r.qu) / W;
        r.Wv = (p * r.pv + q * r.qv) / W;
        r.pbu = (r.pu * W - p * r.Wu) / (W * W);
        r.pbv = (r.pv * W - p * r.Wv) / (W * W);
        r.qbu = (r.qu * W - q * r.Wu) / (W * W);
        r.qbv = (r.qv * W - q * r.Wv) / (W * W);
        r.obu = (r.wu * W - om * r.Wu) / (W * W);
        r.obv = (r.wv * W - om * r.Wv) / (W * W);
    }
    return r;
}

FrameDerivs frame_derivs(const DefiningFn& phi, const GroupPoint& g) {
    const AmbientJet a = phi.eval(g);
    FrameDerivs d;
    d.f = frame_from_ambient(a, g);
    if (d.f.characteristic)
        throw std::domain_error("frame_derivs: characteristic point");

    // ambient coordinate partials of p = gx - (y/2) gt, q = gy + (x/2) gt
    const double px = a.hxx - 0.5 * g.y * a.hxt;
    const double py = a.hxy - 0.5 * a.gt - 0.5 * g.y * a.hyt;
    const double pt = a.hxt - 0.5 * g.y * a.htt;
    const double qx = a.hxy + 0.5 * a.gt + 0.5 * g.x * a.hxt;
    const double qy = a.hyy + 0.5 * g.x * a.hyt;
    const double qt = a.hyt + 0.5 * g.x * a.htt;

    d.X1p = px - 0.5 * g.y * pt;
    d.X2p = py + 0.5 * g.x * pt;
    d.Tp = pt;
    d.X1q = qx - 0.5 * g.y * qt;
    d.X2q = qy + 0.5 * g.x * qt;
    d.Tq = qt;

    const double W = d.f.W, p = d.f.p, q = d.f.q, om = d.f.omega;
    d.X1W = (p * d.X1p + q * d.X1q) / W;
    d.X2W = (p * d.X2p + q * d.X2q) / W;
    d.TW = (p * d.Tp + q * d.Tq) / W;

    const double W2 = W * W;
    d.X1pbar = (d.X1p * W - p * d.X1W) / W2;
    d.X2pbar = (d.X2p * W - p * d.X2W) / W2;
    d.Tpbar = (d.Tp * W - p * d.TW) / W2;
    d.X1qbar = (d.X1q * W - q * d.X1W) / W2;
    d.X2qbar = (d.X2q * W - q * d.X2W) / W2;
    d.Tqbar = (d.Tq * W - q * d.TW) / W2;
    d.Tobar = (a.htt * W - om * d.TW) / W2;

    const double pb = d.f.pbar, qb = d.f.qbar;
    d.Ypbar = pb * d.X1pbar + qb * d.X2pbar;
    d.Zpbar = qb * d.X1pbar - pb * d.X2pbar;
    d.Yqbar = pb * d.X1qbar + qb * d.X2qbar;
    d.Zqbar = qb * d.X1qbar - pb * d.X2qbar;
    d.H = d.X1pbar + d.X2qbar;
    return d;
}

double hmean(const DefiningFn& phi, const GroupPoint& g) { return frame_derivs(phi, g).H; }

double hmean(const ParamPatch& patch, double u, double v) {
    const PatchJet j = patch.eval(u, v);
    const PatchFrame r = patch_frame(j);
    if (r.f.characteristic) throw std::domain_error("hmean: characteristic point");

    // pull the tangential direction e1 = (nu^H)^perp back to parameters
    const auto e1 = frame_ambient(j.point(), {r.f.qbar, -r.f.pbar, 0.0});
    const double j11 = j.xu, j12 = j.xv;
    const double j21 = j.yu, j22 = j.yv;
    const double j31 = j.tu, j32 = j.tv;
    const double a11 = j11 * j11 + j21 * j21 + j31 * j31;
    const double a12 = j11 * j12 + j21 * j22 + j31 * j32;
    const double a22 = j12 * j12 + j22 * j22 + j32 * j32;
    const double b1 = j11 * e1[0] + j21 * e1[1] + j31 * e1[2];
    const double b2 = j12 * e1[0] + j22 * e1[1] + j32 * e1[2];
    const double det = a11 * a22 - a12 * a12;
    if (det == 0.0) throw std::domain_error("hmean: degenerate patch Jacobian");
    const double z1 = (a22 * b1 - a12 * b2) / det;
    const double z2 = (a11 * b2 - a12 * b1) / det;

    const double Zp = r.pu * z1 + r.pv * z2;
    const double Zq = r.qu * z1 + r.qv * z2;
    const double W = r.f.W;
    const double ZW = (r.f.p * Zp + r.f.q * Zq) / W;
    const double Zpbar = (Zp * W - r.f.p * ZW) / (W * W);
    const double Zqbar = (Zq * W - r.f.q * ZW) / (W * W);
    return r.f.qbar * Zpbar - r.f.pbar * Zqbar;
}

double hmean(const Surface& s, const GroupPoint& g) {
    if (!s.defining.has_value())
        throw std::invalid_argument("hmean(Surface): no defining function");
    return hmean(*s.defining, g);
}

double hmean_strip(const GraphicalStrip& strip, double y, double t) {
    const GraphicalStrip s = strip_to_x_branch(strip);
    const Jet1 g = s.G.jet(t);
    const double p = 1.0 + 0.5 * y * y * g.d1;
    const double q = -g.v * p;
    const double W = std::sqrt(1.0 + g.v * g.v) * p;
    const double X1p = -0.25 * y * y * y * g.d2;
    const double X2q = -y * g.v * (g.d1 + 0.25 * y * y * g.v * g.d2);
    const double X1W = -0.25 * y * y * y * g.d2 * std::sqrt(1.0 + g.v * g.v);
    const double X2W = y * std::sqrt(1.0 + g.v * g.v) * (g.d1 + 0.25 * y * y * g.v * g.d2);
    return X1p / W - p * X1W / (W * W) + X2q / W - q * X2W / (W * W);
}

BurgersValues burgers(const IntrinsicGraph& g, double u, double v) {
    const IntrinsicJet j = g.eval(u, v);
    if (!j.in_domain) throw std::domain_error("burgers: point outside Omega");
    BurgersValues r;
    r.B = j.pu + j.phi * j.pv;
    const double Bu = j.puu + j.pu * j.pv + j.phi * j.puv;
    const double Bv = j.puv + j.pv * j.pv + j.phi * j.pvv;
    r.BB = Bu + j.phi * Bv;
    return r;
}

double hmean_intrinsic(const IntrinsicGraph& g, double u, double v) {
    const BurgersValues b = burgers(g, u, v);
    return -b.BB / std::pow(1.0 + b.B * b.B, 1.5);
}

ZYT zyt_derivatives(const DefiningFn& phi, const GroupPoint& g, const AmbientScalar& zeta) {
    const FrameData f = frame_from_defining(phi, g);
    if (f.characteristic) throw std::domain_error("zyt_derivatives: characteristic point");
    const AmbientJet1 z = zeta(g);
    const double X1z = z.gx - 0.5 * g.y * z.gt;
    const double X2z = z.gy + 0.5 * g.x * z.gt;
    ZYT out;
    out.Y = f.pbar * X1z + f.qbar * X2z;
    out.Z = f.qbar * X1z - f.pbar * X2z;
    out.T = z.gt;
    return out;
}

QuadResult sigma_h_integral(const ParamPatch& patch,
                            const std::function<double(double, double)>& F,
                            const QuadratureSpec& spec) {
    auto integrand = [&patch, &F](double u, double v) {
        return F(u, v) * frame_from_patchjet(patch.eval(u, v)).W;
    };
    QuadResult r = integrate2d(integrand, patch.domain(), spec);
    if (!r.converged)
        throw QuadratureError("sigma_h_integral: tolerance not reached at max depth");
    return r;
}

double h_perimeter(const ParamPatch& patch, const QuadratureSpec& spec) {
    return sigma_h_integral(
               patch, [](double, double) { return 1.0; }, spec)
        .value;
}

std::vector<CharPoint> characteristic_scan(const ParamPatch& patch, int grid, double capture) {
    const Rect d = patch.domain();
    const int n = std::max(grid, 4);
    std::vector<std::vector<double>> W(n + 1, std::vector<double>(n + 1));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const double u = d.u0 + (d.u1 - d.u0) * i / n;
            const double v = d.v0 + (d.v1 - d.v0) * j / n;
            W[i][j] = frame_from_patch(patch, u, v).W;
        }
    std::vector<CharPoint> out;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1 && is_min; ++dj) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii > n || jj > n || (di == 0 && dj == 0)) continue;
                    if (W[ii][jj] < W[i][j]) is_min = false;
                }
            if (!is_min || W[i][j] > capture * 100.0) continue;
            // Gauss-Newton on the residual (p, q)
            double u = d.u0 + (d.u1 - d.u0) * i / n;
            double v = d.v0 + (d.v1 - d.v0) * j / n;
            for (int it = 0; it < 40; ++it) {
                const PatchFrame r = patch_frame(patch.eval(u, v));
                const double a11 = r.pu, a12 = r.pv, a21 = r.qu, a22 = r.qv;
                const double det = a11 * a22 - a12 * a21;
                if (std::abs(det) < 1e-30) break;
                const double du = (a22 * r.f.p - a12 * r.f.q) / det;
                const double dv = (a11 * r.f.q - a21 * r.f.p) / det;
                u = std::clamp(u - du, d.u0, d.u1);
                v = std::clamp(v - dv, d.v0, d.v1);
                if (std::abs(du) + std::abs(dv) < 1e-15) break;
            }
            const FrameData f = frame_from_patch(patch, u, v);
            if (f.W <= capture * (1.0 + f.normN)) {
                bool dup = false;
                for (const auto& c : out)
                    if (std::abs(c.u - u) < 1e-7 * (1 + std::abs(u)) &&
                        std::abs(c.v - v) < 1e-7 * (1 + std::abs(v)))
                        dup = true;
                if (!dup) out.push_back({u, v, f.W});
            }
        }
    return out;
}

}  // namespace hbern
