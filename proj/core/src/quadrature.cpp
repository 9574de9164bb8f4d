#include "hbern/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace hbern {
namespace {

// Kronrod 15-point nodes/weights on [-1,1] with the embedded Gauss 7 rule.
constexpr int kN = 15;
const double kNodes[kN] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
const double kWK[kN] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double kWG[kN] = {
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0, 0.381830050505119, 0.0,
    0.417959183673469, 0.0, 0.381830050505119, 0.0, 0.279705391489277, 0.0,
    0.129484966168870, 0.0};

struct Cell1 {
    double k15, err;
};

Cell1 rule1(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < kN; ++i) {
        const double y = f(c + h * kNodes[i]);
        k15 += kWK[i] * y;
        g7 += kWG[i] * y;
    }
    k15 *= h;
    g7 *= h;
    const double diff = std::abs(k15 - g7);
    // standard scaled error heuristic for the nested pair
    const double err = diff * std::min(1.0, std::pow(200.0 * diff / std::max(1e-300, std::abs(k15) + diff), 1.5)) + 1e-300;
    return {k15, std::max(err, diff * 1e-6)};
}

void adapt1(const std::function<double(double)>& f, double a, double b, double tol,
            int depth, const QuadratureSpec& spec, double& sum, double& errsum,
            std::int64_t& evals, std::int64_t& cells, bool& ok) {
    Cell1 c = rule1(f, a, b);
    evals += kN;
    ++cells;
    if (c.err <= tol || depth >= spec.max_depth || cells > spec.max_cells) {
        if (c.err > tol) ok = false;
        sum += c.k15;
        errsum += c.err;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt1(f, a, m, 0.5 * tol, depth + 1, spec, sum, errsum, evals, cells, ok);
    adapt1(f, m, b, 0.5 * tol, depth + 1, spec, sum, errsum, evals, cells, ok);
}

struct Cell2 {
    double k15;    // full tensor K15 x K15
    double err_u;  // |K15xK15 - G7xK15|
    double err_v;  // |K15xK15 - K15xG7|
};

Cell2 rule2(const std::function<double(double, double)>& f, const Rect& r) {
    const double cu = 0.5 * (r.u0 + r.u1), hu = 0.5 * (r.u1 - r.u0);
    const double cv = 0.5 * (r.v0 + r.v1), hv = 0.5 * (r.v1 - r.v0);
    double kk = 0.0, gk = 0.0, kg = 0.0;
    for (int i = 0; i < kN; ++i) {
        double row_k = 0.0, row_g = 0.0;
        const double u = cu + hu * kNodes[i];
        for (int j = 0; j < kN; ++j) {
            const double y = f(u, cv + hv * kNodes[j]);
            row_k += kWK[j] * y;
            row_g += kWG[j] * y;
        }
        kk += kWK[i] * row_k;
        gk += kWG[i] * row_k;
        kg += kWK[i] * row_g;
    }
    const double scale = hu * hv;
    Cell2 c;
    c.k15 = kk * scale;
    c.err_u = std::abs((kk - gk) * scale);
    c.err_v = std::abs((kk - kg) * scale);
    return c;
}

void adapt2(const std::function<double(double, double)>& f, const Rect& r, double tol,
            int depth, const QuadratureSpec& spec, double& sum, double& errsum,
            std::int64_t& evals, std::int64_t& cells, bool& ok) {
    Cell2 c = rule2(f, r);
    evals += kN * kN;
    ++cells;
    const double err = c.err_u + c.err_v;
    if (err <= tol || depth >= spec.max_depth || cells > spec.max_cells) {
        if (err > tol) ok = false;
        sum += c.k15;
        errsum += err;
        return;
    }
    Rect a = r, b = r;
    if (c.err_u >= c.err_v) {
        const double m = 0.5 * (r.u0 + r.u1);
        a.u1 = m;
        b.u0 = m;
    } else {
        const double m = 0.5 * (r.v0 + r.v1);
        a.v1 = m;
        b.v0 = m;
    }
    adapt2(f, a, 0.5 * tol, depth + 1, spec, sum, errsum, evals, cells, ok);
    adapt2(f, b, 0.5 * tol, depth + 1, spec, sum, errsum, evals, cells, ok);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureSpec& spec) {
    QuadResult out;
    if (a == b) return out;
    Cell1 whole = rule1(f, a, b);
    out.evaluations = kN;
    const double tol = std::max(spec.abs_floor, spec.rel_tol * std::abs(whole.k15));
    double sum = 0.0, errsum = 0.0;
    std::int64_t cells = 0;
    bool ok = true;
    adapt1(f, a, b, tol, 0, spec, sum, errsum, out.evaluations, cells, ok);
    // refine the tolerance once against the improved value
    const double tol2 = std::max(spec.abs_floor, spec.rel_tol * std::abs(sum));
    if (errsum > tol2 && ok) {
        double sum2 = 0.0, err2 = 0.0;
        cells = 0;
        ok = true;
        adapt1(f, a, b, tol2, 0, spec, sum2, err2, out.evaluations, cells, ok);
        sum = sum2;
        errsum = err2;
    }
    out.value = sum;
    out.error = errsum;
    out.converged = ok;
    return out;
}

QuadResult integrate2d(const std::function<double(double, double)>& f, const Rect& r,
                       const QuadratureSpec& spec) {
    QuadResult out;
    if (r.area() == 0.0) return out;
    Cell2 whole = rule2(f, r);
    out.evaluations = kN * kN;
    const double tol = std::max(spec.abs_floor, spec.rel_tol * std::abs(whole.k15));
    double sum = 0.0, errsum = 0.0;
    std::int64_t cells = 0;
    bool ok = true;
    adapt2(f, r, tol, 0, spec, sum, errsum, out.evaluations, cells, ok);
    const double tol2 = std::max(spec.abs_floor, spec.rel_tol * std::abs(sum));
    if (errsum > tol2 && ok) {
        double sum2 = 0.0, err2 = 0.0;
        cells = 0;
        ok = true;
        adapt2(f, r, tol2, 0, spec, sum2, err2, out.evaluations, cells, ok);
        sum = sum2;
        errsum = err2;
    }
    out.value = sum;
    out.error = errsum;
    out.converged = ok;
    return out;
}

double tensor_integrate(const std::function<double(const std::vector<double>&)>& f,
                        const std::vector<double>& lo, const std::vector<double>& hi,
                        int cells) {
    // Gauss-Legendre 16 on [-1,1]
    static const double gx[8] = {0.0950125098376374, 0.2816035507792589,
                                 0.4580167776572274, 0.6178762444026438,
                                 0.7554044083550030, 0.8656312023878318,
                                 0.9445750230732326, 0.9894009349916499};
    static const double gw[8] = {0.1894506104550685, 0.1826034150449236,
                                 0.1691565193950025, 0.1495959888165767,
                                 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};
    const size_t m = lo.size();
    if (hi.size() != m) throw QuadratureError("dimension mismatch");
    std::vector<double> nodes1, w1;
    for (int c = 0; c < cells; ++c) {
        for (int s = -1; s <= 1; s += 2)
            for (int i = 0; i < 8; ++i) {
                nodes1.push_back((c + 0.5 + 0.5 * s * gx[i]) / cells);
                w1.push_back(0.5 * gw[i] / cells);
            }
    }
    const size_t n1 = nodes1.size();
    std::vector<size_t> idx(m, 0);
    std::vector<double> pt(m);
    double total = 0.0;
    while (true) {
        double w = 1.0;
        for (size_t d = 0; d < m; ++d) {
            pt[d] = lo[d] + (hi[d] - lo[d]) * nodes1[idx[d]];
            w *= w1[idx[d]] * (hi[d] - lo[d]);
        }
        total += w * f(pt);
        size_t d = 0;
        while (d < m && ++idx[d] == n1) {
            idx[d] = 0;
            ++d;
        }
        if (d == m) break;
    }
    return total;
}

}  // namespace hbern
