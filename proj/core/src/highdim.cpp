#include "hbern/highdim.hpp"

#include <cmath>
#include <stdexcept>

#include "hbern/quadrature.hpp"

namespace hbern {

namespace {
void require_dim(const CylinderSurface& c, const std::vector<double>& z) {
    if (static_cast<int>(z.size()) != 2 * c.n)
        throw std::invalid_argument("cylinder point must have 2n coordinates");
}
}  // namespace

CylinderSurface cylinder_linear(int n, std::vector<double> coeffs, double offset) {
    if (static_cast<int>(coeffs.size()) != 2 * n)
        throw std::invalid_argument("cylinder_linear: need 2n coefficients");
    double norm2 = 0;
    for (double c : coeffs) norm2 += c * c;
    if (!(norm2 > 0)) throw std::invalid_argument("cylinder_linear: zero gradient");
    CylinderSurface s;
    s.n = n;
    s.alpha = std::sqrt(norm2);
    s.h = [coeffs, offset](const std::vector<double>& z) {
        CylJet j;
        j.grad = coeffs;
        j.hess.assign(coeffs.size() * coeffs.size(), 0.0);
        j.v = -offset;
        for (size_t i = 0; i < coeffs.size(); ++i) j.v += coeffs[i] * z[i];
        return j;
    };
    return s;
}

CylinderSurface cylinder_sphere(int n, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("cylinder_sphere: radius must be positive");
    CylinderSurface s;
    s.n = n;
    s.alpha = radius;  // |grad| = 2|z| = 2R on the surface
    const size_t m = 2 * n;
    s.h = [radius, m](const std::vector<double>& z) {
        CylJet j;
        j.grad.assign(m, 0.0);
        j.hess.assign(m * m, 0.0);
        j.v = -radius * radius;
        for (size_t i = 0; i < m; ++i) {
            j.v += z[i] * z[i];
            j.grad[i] = 2.0 * z[i];
            j.hess[i * m + i] = 2.0;
        }
        return j;
    };
    return s;
}

CylinderSurface cylinder_graph(int n, FnN f) {
    CylinderSurface s;
    s.n = n;
    s.alpha = 1.0;  // |grad| = sqrt(1 + |grad f|^2) >= 1
    const size_t m = 2 * n;
    s.h = [f, m](const std::vector<double>& z) {
        std::vector<double> args(z.begin(), z.end() - 1);
        const CylJet jf = f(args);
        CylJet j;
        j.v = z[m - 1] - jf.v;
        j.grad.assign(m, 0.0);
        j.hess.assign(m * m, 0.0);
        for (size_t i = 0; i + 1 < m; ++i) {
            j.grad[i] = -jf.grad[i];
            for (size_t k = 0; k + 1 < m; ++k) j.hess[i * m + k] = -jf.hess[i * (m - 1) + k];
        }
        j.grad[m - 1] = 1.0;
        return j;
    };
    return s;
}

std::vector<double> cylinder_frame(const CylinderSurface& c, const std::vector<double>& z) {
    require_dim(c, z);
    const CylJet j = c.h(z);
    double g2 = 0;
    for (double g : j.grad) g2 += g * g;
    if (std::sqrt(g2) < c.alpha * (1.0 - 1e-9))
        throw std::domain_error("cylinder_frame: gradient floor violated");
    return j.grad;
}

double cylinder_hmean(const CylinderSurface& c, const std::vector<double>& z) {
    require_dim(c, z);
    const CylJet j = c.h(z);
    const size_t m = j.grad.size();
    double g2 = 0, lap = 0, quad = 0;
    for (size_t i = 0; i < m; ++i) {
        g2 += j.grad[i] * j.grad[i];
        lap += j.hess[i * m + i];
        for (size_t k = 0; k < m; ++k) quad += j.grad[i] * j.hess[i * m + k] * j.grad[k];
    }
    if (!(g2 > 0)) throw std::domain_error("cylinder_hmean: vanishing gradient");
    return (lap * g2 - quad) / (g2 * std::sqrt(g2));
}

PerimeterPair cylinder_perimeter_graph(int n, const FnN& f, const std::vector<double>& lo,
                                       const std::vector<double>& hi, double t0, double t1,
                                       int cells) {
    if (lo.size() != static_cast<size_t>(2 * n - 1) || hi.size() != lo.size())
        throw std::invalid_argument("cylinder_perimeter_graph: box must have 2n-1 sides");
    const CylinderSurface cyl = cylinder_graph(n, f);
    std::vector<double> blo = lo, bhi = hi;
    blo.push_back(t0);
    bhi.push_back(t1);  // last axis is t

    auto area_density = [&](const std::vector<double>& pt, bool weighted) {
        std::vector<double> args(pt.begin(), pt.end() - 1);
        const CylJet jf = f(args);
        double g2 = 0;
        for (double g : jf.grad) g2 += g * g;
        const double dens = std::sqrt(1.0 + g2);
        if (!weighted) return dens;
        // cos of the horizontal angle: frame norm of (X_i phi) over the
        // Euclidean norm of (grad h, phi_t); phi_t vanishes on cylinders
        std::vector<double> z = args;
        z.push_back(jf.v);
        const std::vector<double> grad = cylinder_frame(cyl, z);
        const double phi_t = 0.0;
        double w2 = 0;
        for (int i = 0; i < n; ++i) {
            const double xi = grad[i] - 0.5 * z[n + i] * phi_t;
            const double yi = grad[n + i] + 0.5 * z[i] * phi_t;
            w2 += xi * xi + yi * yi;
        }
        double e2 = phi_t * phi_t;
        for (double g : grad) e2 += g * g;
        return (std::sqrt(w2) / std::sqrt(e2)) * dens;
    };
    PerimeterPair out;
    out.sigma_h = tensor_integrate(
        [&](const std::vector<double>& p) { return area_density(p, true); }, blo, bhi, cells);
    out.hausdorff = tensor_integrate(
        [&](const std::vector<double>& p) { return area_density(p, false); }, blo, bhi, cells);
    const double fine = tensor_integrate(
        [&](const std::vector<double>& p) { return area_density(p, false); }, blo, bhi,
        cells * 2);
    out.est_err = std::abs(fine - out.hausdorff);
    out.rel_gap = std::abs(out.sigma_h - out.hausdorff) / std::max(1e-300, out.hausdorff);
    return out;
}

ParamPatch circle_cylinder_patch(double radius, Interval theta, Interval t) {
    if (!(radius > 0)) throw std::invalid_argument("circle_cylinder_patch: bad radius");
    auto f = [radius](double a, double v) {
        PatchJet j;
        j.x = radius * std::cos(a);
        j.y = radius * std::sin(a);
        j.t = v;
        j.xu = -radius * std::sin(a);
        j.yu = radius * std::cos(a);
        j.tv = 1.0;
        j.xuu = -radius * std::cos(a);
        j.yuu = -radius * std::sin(a);
        return j;
    };
    return ParamPatch(f, Rect{theta.lo, theta.hi, t.lo, t.hi});
}

std::vector<double> negative_example_nu(int n, const FnN& f, const std::vector<double>& xyp) {
    if (xyp.size() != static_cast<size_t>(2 * n - 1))
        throw std::invalid_argument("negative_example_nu: point must have 2n-1 coordinates");
    const CylJet jf = f(xyp);
    double g2 = 0;
    for (double g : jf.grad) g2 += g * g;
    const double s = 1.0 / std::sqrt(1.0 + g2);
    std::vector<double> nu(2 * n, 0.0);
    for (size_t i = 0; i + 1 < nu.size(); ++i) nu[i] = -jf.grad[i] * s;
    nu[2 * n - 1] = s;
    return nu;
}

double negative_example_div(int n, const FnN& f, const std::vector<double>& xyp) {
    std::vector<double> z = xyp;
    const CylJet jf = f(xyp);
    z.push_back(jf.v);
    return cylinder_hmean(cylinder_graph(n, f), z);
}

FnN graph_affine(int args, std::vector<double> slopes, double offset) {
    if (static_cast<int>(slopes.size()) != args)
        throw std::invalid_argument("graph_affine: slope count mismatch");
    return [slopes, offset, args](const std::vector<double>& p) {
        CylJet j;
        j.v = offset;
        j.grad = slopes;
        j.hess.assign(static_cast<size_t>(args) * args, 0.0);
        for (int i = 0; i < args; ++i) j.v += slopes[i] * p[i];
        return j;
    };
}

FnN graph_periodic_saddle(int args) {
    if (args < 2) throw std::invalid_argument("graph_periodic_saddle: needs >= 2 arguments");
    // log(cos a0) - log(cos a1): a classical minimal graph on |a| < pi/2,
    // extended constantly in the remaining directions
    return [args](const std::vector<double>& p) {
        CylJet j;
        j.grad.assign(args, 0.0);
        j.hess.assign(static_cast<size_t>(args) * args, 0.0);
        j.v = std::log(std::cos(p[0])) - std::log(std::cos(p[1]));
        j.grad[0] = -std::tan(p[0]);
        j.grad[1] = std::tan(p[1]);
        const double s0 = 1.0 / std::cos(p[0]), s1 = 1.0 / std::cos(p[1]);
        j.hess[0] = -s0 * s0;
        j.hess[args + 1] = s1 * s1;
        return j;
    };
}

}  // namespace hbern
