#pragma once

// Forward-mode scalar types. Dual1 carries one derivative, Dual2 is a
// hyper-dual number carrying two first derivatives and the mixed second
// derivative, which makes exact Hessian entries a single evaluation.

#include <cmath>

namespace aga {

struct Dual1 {
    double v = 0.0;   // value
    double d = 0.0;   // derivative

    constexpr Dual1() = default;
    constexpr Dual1(double value) : v(value) {}
    constexpr Dual1(double value, double deriv) : v(value), d(deriv) {}
};

constexpr Dual1 operator-(Dual1 a) { return {-a.v, -a.d}; }
constexpr Dual1 operator+(Dual1 a, Dual1 b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual1 operator-(Dual1 a, Dual1 b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual1 operator*(Dual1 a, Dual1 b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
}
constexpr Dual1 operator/(Dual1 a, Dual1 b) {
    const double inv = 1.0 / b.v;
    return {a.v * inv, (a.d - a.v * b.d * inv) * inv};
}
constexpr Dual1& operator+=(Dual1& a, Dual1 b) { a = a + b; return a; }
constexpr Dual1& operator-=(Dual1& a, Dual1 b) { a = a - b; return a; }
constexpr Dual1& operator*=(Dual1& a, Dual1 b) { a = a * b; return a; }

inline Dual1 sin(Dual1 a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual1 cos(Dual1 a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual1 atan(Dual1 a) {
    return {std::atan(a.v), a.d / (1.0 + a.v * a.v)};
}
inline Dual1 exp(Dual1 a) {
    const double e = std::exp(a.v);
    return {e, e * a.d};
}

// Hyper-dual number: value, d/dx, d/dy, d2/dxdy. Setting dy = dxy = 0
// reproduces Dual1 exactly.
struct Dual2 {
    double v = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dxy = 0.0;

    constexpr Dual2() = default;
    constexpr Dual2(double value) : v(value) {}
    constexpr Dual2(double value, double x, double y, double xy)
        : v(value), dx(x), dy(y), dxy(xy) {}
};

constexpr Dual2 operator-(Dual2 a) { return {-a.v, -a.dx, -a.dy, -a.dxy}; }
constexpr Dual2 operator+(Dual2 a, Dual2 b) {
    return {a.v + b.v, a.dx + b.dx, a.dy + b.dy, a.dxy + b.dxy};
}
constexpr Dual2 operator-(Dual2 a, Dual2 b) {
    return {a.v - b.v, a.dx - b.dx, a.dy - b.dy, a.dxy - b.dxy};
}
constexpr Dual2 operator*(Dual2 a, Dual2 b) {
    return {a.v * b.v,
            a.dx * b.v + a.v * b.dx,
            a.dy * b.v + a.v * b.dy,
            a.dxy * b.v + a.dx * b.dy + a.dy * b.dx + a.v * b.dxy};
}
constexpr Dual2& operator+=(Dual2& a, Dual2 b) { a = a + b; return a; }
constexpr Dual2& operator-=(Dual2& a, Dual2 b) { a = a - b; return a; }
constexpr Dual2& operator*=(Dual2& a, Dual2 b) { a = a * b; return a; }

// Composition with a univariate f given f(v), f'(v), f''(v).
constexpr Dual2 compose(Dual2 a, double f, double fp, double fpp) {
    return {f, fp * a.dx, fp * a.dy, fp * a.dxy + fpp * a.dx * a.dy};
}

constexpr Dual2 operator/(Dual2 a, Dual2 b) {
    const double inv = 1.0 / b.v;
    return a * compose(b, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Dual2 sin(Dual2 a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, s, c, -s);
}
inline Dual2 cos(Dual2 a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, c, -s, -c);
}
inline Dual2 atan(Dual2 a) {
    const double q = 1.0 + a.v * a.v;
    return compose(a, std::atan(a.v), 1.0 / q, -2.0 * a.v / (q * q));
}
inline Dual2 exp(Dual2 a) {
    const double e = std::exp(a.v);
    return compose(a, e, e, e);
}

// Integer power by repeated squaring; works for any scalar type that has
// multiplication and division.
template <class T>
T powi(T base, int n) {
    if (n < 0) return T(1.0) / powi(base, -n);
    T result(1.0);
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

inline double powi(double base, int n) { return std::pow(base, n); }

constexpr double value_of(double x) { return x; }
constexpr double value_of(Dual1 x) { return x.v; }
constexpr double value_of(Dual2 x) { return x.v; }

}  // namespace aga
