#pragma once

#include <cmath>

// Truncated Taylor arithmetic to third order, one and two variables.
// Entries are derivative values, not Taylor coefficients.

namespace hbern {

struct Jet1 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;

    static Jet1 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
    static Jet1 variable(double x) { return {x, 1.0, 0.0, 0.0}; }
};

inline Jet1 operator+(const Jet1& a, const Jet1& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Jet1 operator-(const Jet1& a, const Jet1& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Jet1 operator-(const Jet1& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }
inline Jet1 operator*(const Jet1& a, const Jet1& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}
inline Jet1 operator*(double c, const Jet1& a) { return {c * a.v, c * a.d1, c * a.d2, c * a.d3}; }
inline Jet1 operator*(const Jet1& a, double c) { return c * a; }
inline Jet1 operator+(const Jet1& a, double c) { return {a.v + c, a.d1, a.d2, a.d3}; }
inline Jet1 operator+(double c, const Jet1& a) { return a + c; }
inline Jet1 operator-(const Jet1& a, double c) { return {a.v - c, a.d1, a.d2, a.d3}; }
inline Jet1 operator-(double c, const Jet1& a) { return {c - a.v, -a.d1, -a.d2, -a.d3}; }

/// Composition g(f) from the derivative values g1, g2, g3 of g at f.v.
inline Jet1 compose(const Jet1& f, double g0, double g1, double g2, double g3) {
    return {g0,
            g1 * f.d1,
            g2 * f.d1 * f.d1 + g1 * f.d2,
            g3 * f.d1 * f.d1 * f.d1 + 3.0 * g2 * f.d1 * f.d2 + g1 * f.d3};
}

inline Jet1 recip(const Jet1& a) {
    const double u = a.v;
    return compose(a, 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u), -6.0 / (u * u * u * u));
}
inline Jet1 operator/(const Jet1& a, const Jet1& b) { return a * recip(b); }
inline Jet1 operator/(const Jet1& a, double c) { return (1.0 / c) * a; }
inline Jet1 operator/(double c, const Jet1& a) { return c * recip(a); }

inline Jet1 sin(const Jet1& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, s, c, -s, -c);
}
inline Jet1 cos(const Jet1& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, c, -s, -c, s);
}
inline Jet1 tan(const Jet1& a) {
    const double v = std::tan(a.v), w = 1.0 + v * v;
    return compose(a, v, w, 2.0 * v * w, 2.0 * w * (1.0 + 3.0 * v * v));
}
inline Jet1 cot(const Jet1& a) {
    const double v = 1.0 / std::tan(a.v), w = 1.0 + v * v;
    return compose(a, v, -w, 2.0 * v * w, -2.0 * w * (1.0 + 3.0 * v * v));
}
inline Jet1 tanh(const Jet1& a) {
    const double v = std::tanh(a.v), w = 1.0 - v * v;
    return compose(a, v, w, -2.0 * v * w, -2.0 * w * (1.0 - 3.0 * v * v));
}
inline Jet1 cosh(const Jet1& a) {
    const double c = std::cosh(a.v), s = std::sinh(a.v);
    return compose(a, c, s, c, s);
}
inline Jet1 exp(const Jet1& a) {
    const double e = std::exp(a.v);
    return compose(a, e, e, e, e);
}
inline Jet1 log(const Jet1& a) {
    const double u = a.v;
    return compose(a, std::log(u), 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u));
}
inline Jet1 sqrt(const Jet1& a) {
    const double u = a.v, r = std::sqrt(u);
    return compose(a, r, 0.5 / r, -0.25 / (u * r), 0.375 / (u * u * r));
}
inline Jet1 atan(const Jet1& a) {
    const double u = a.v, w = 1.0 + u * u;
    return compose(a, std::atan(u), 1.0 / w, -2.0 * u / (w * w), (6.0 * u * u - 2.0) / (w * w * w));
}
inline Jet1 pow_int(Jet1 base, long long e) {
    Jet1 r = Jet1::constant(1.0);
    bool neg = e < 0;
    unsigned long long n = neg ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1ull) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return neg ? recip(r) : r;
}

struct Jet2 {
    double v = 0.0;
    double x = 0.0, y = 0.0;
    double xx = 0.0, xy = 0.0, yy = 0.0;
    double xxx = 0.0, xxy = 0.0, xyy = 0.0, yyy = 0.0;

    static Jet2 constant(double c) {
        Jet2 j;
        j.v = c;
        return j;
    }
    static Jet2 var_x(double val) {
        Jet2 j;
        j.v = val;
        j.x = 1.0;
        return j;
    }
    static Jet2 var_y(double val) {
        Jet2 j;
        j.v = val;
        j.y = 1.0;
        return j;
    }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.v + b.v, a.x + b.x, a.y + b.y, a.xx + b.xx, a.xy + b.xy, a.yy + b.yy,
            a.xxx + b.xxx, a.xxy + b.xxy, a.xyy + b.xyy, a.yyy + b.yyy};
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.v - b.v, a.x - b.x, a.y - b.y, a.xx - b.xx, a.xy - b.xy, a.yy - b.yy,
            a.xxx - b.xxx, a.xxy - b.xxy, a.xyy - b.xyy, a.yyy - b.yyy};
}
inline Jet2 operator-(const Jet2& a) {
    return {-a.v, -a.x, -a.y, -a.xx, -a.xy, -a.yy, -a.xxx, -a.xxy, -a.xyy, -a.yyy};
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    Jet2 r;
    r.v = a.v * b.v;
    r.x = a.x * b.v + a.v * b.x;
    r.y = a.y * b.v + a.v * b.y;
    r.xx = a.xx * b.v + 2.0 * a.x * b.x + a.v * b.xx;
    r.xy = a.xy * b.v + a.x * b.y + a.y * b.x + a.v * b.xy;
    r.yy = a.yy * b.v + 2.0 * a.y * b.y + a.v * b.yy;
    r.xxx = a.xxx * b.v + 3.0 * a.xx * b.x + 3.0 * a.x * b.xx + a.v * b.xxx;
    r.xxy = a.xxy * b.v + a.xx * b.y + 2.0 * a.xy * b.x + 2.0 * a.x * b.xy + a.y * b.xx + a.v * b.xxy;
    r.xyy = a.xyy * b.v + a.yy * b.x + 2.0 * a.xy * b.y + 2.0 * a.y * b.xy + a.x * b.yy + a.v * b.xyy;
    r.yyy = a.yyy * b.v + 3.0 * a.yy * b.y + 3.0 * a.y * b.yy + a.v * b.yyy;
    return r;
}
inline Jet2 operator*(double c, const Jet2& a) {
    return {c * a.v, c * a.x, c * a.y, c * a.xx, c * a.xy, c * a.yy,
            c * a.xxx, c * a.xxy, c * a.xyy, c * a.yyy};
}
inline Jet2 operator*(const Jet2& a, double c) { return c * a; }
inline Jet2 operator+(const Jet2& a, double c) {
    Jet2 r = a;
    r.v += c;
    return r;
}
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }
inline Jet2 operator-(const Jet2& a, double c) { return a + (-c); }
inline Jet2 operator-(double c, const Jet2& a) { return (-a) + c; }

/// Composition g(f) from the derivative values g1, g2, g3 of g at f.v.
inline Jet2 compose(const Jet2& f, double g0, double g1, double g2, double g3) {
    Jet2 r;
    r.v = g0;
    r.x = g1 * f.x;
    r.y = g1 * f.y;
    r.xx = g2 * f.x * f.x + g1 * f.xx;
    r.xy = g2 * f.x * f.y + g1 * f.xy;
    r.yy = g2 * f.y * f.y + g1 * f.yy;
    r.xxx = g3 * f.x * f.x * f.x + 3.0 * g2 * f.x * f.xx + g1 * f.xxx;
    r.xxy = g3 * f.x * f.x * f.y + g2 * (2.0 * f.x * f.xy + f.xx * f.y) + g1 * f.xxy;
    r.xyy = g3 * f.x * f.y * f.y + g2 * (2.0 * f.y * f.xy + f.yy * f.x) + g1 * f.xyy;
    r.yyy = g3 * f.y * f.y * f.y + 3.0 * g2 * f.y * f.yy + g1 * f.yyy;
    return r;
}

inline Jet2 recip(const Jet2& a) {
    const double u = a.v;
    return compose(a, 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u), -6.0 / (u * u * u * u));
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * recip(b); }
inline Jet2 operator/(const Jet2& a, double c) { return (1.0 / c) * a; }
inline Jet2 operator/(double c, const Jet2& a) { return c * recip(a); }

inline Jet2 sin(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, s, c, -s, -c);
}
inline Jet2 cos(const Jet2& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, c, -s, -c, s);
}
inline Jet2 tan(const Jet2& a) {
    const double v = std::tan(a.v), w = 1.0 + v * v;
    return compose(a, v, w, 2.0 * v * w, 2.0 * w * (1.0 + 3.0 * v * v));
}
inline Jet2 cot(const Jet2& a) {
    const double v = 1.0 / std::tan(a.v), w = 1.0 + v * v;
    return compose(a, v, -w, 2.0 * v * w, -2.0 * w * (1.0 + 3.0 * v * v));
}
inline Jet2 tanh(const Jet2& a) {
    const double v = std::tanh(a.v), w = 1.0 - v * v;
    return compose(a, v, w, -2.0 * v * w, -2.0 * w * (1.0 - 3.0 * v * v));
}
inline Jet2 cosh(const Jet2& a) {
    const double c = std::cosh(a.v), s = std::sinh(a.v);
    return compose(a, c, s, c, s);
}
inline Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.v);
    return compose(a, e, e, e, e);
}
inline Jet2 log(const Jet2& a) {
    const double u = a.v;
    return compose(a, std::log(u), 1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u));
}
inline Jet2 sqrt(const Jet2& a) {
    const double u = a.v, r = std::sqrt(u);
    return compose(a, r, 0.5 / r, -0.25 / (u * r), 0.375 / (u * u * r));
}
inline Jet2 atan(const Jet2& a) {
    const double u = a.v, w = 1.0 + u * u;
    return compose(a, std::atan(u), 1.0 / w, -2.0 * u / (w * w), (6.0 * u * u - 2.0) / (w * w * w));
}
inline Jet2 pow_int(Jet2 base, long long e) {
    Jet2 r = Jet2::constant(1.0);
    bool neg = e < 0;
    unsigned long long n = neg ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1ull) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return neg ? recip(r) : r;
}

}  // namespace hbern
