#pragma once

// Exact first/second derivatives of type-erased scalar functions via
// forward-mode duals, plus a central-difference oracle used by tests.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aga/matrix.hpp"
#include "aga/scalar.hpp"

namespace aga {

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A scalar function R^d -> R evaluable over plain doubles and both dual
// types. Construct from any generic callable f(span<const T>) -> T.
struct ScalarFn {
    std::function<double(std::span<const double>)> real;
    std::function<Dual1(std::span<const Dual1>)> dual1;
    std::function<Dual2(std::span<const Dual2>)> dual2;

    ScalarFn() = default;

    template <class F>
        requires std::invocable<F, std::span<const double>>
    ScalarFn(F f) : real(f), dual1(f), dual2(f) {}

    double operator()(std::span<const double> w) const { return real(w); }
};

inline void check_finite(double x, std::size_t coord, const char* what) {
    if (!std::isfinite(x))
        throw EvalError(std::string(what) + " produced a non-finite value at coordinate " +
                        std::to_string(coord));
}

// Exact gradient: d forward passes with unit derivative seeds.
inline Vec grad_scalar(const ScalarFn& f, std::span<const double> w) {
    const std::size_t d = w.size();
    std::vector<Dual1> x(d);
    Vec g(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) x[j] = Dual1(w[j], i == j ? 1.0 : 0.0);
        const Dual1 y = f.dual1(x);
        check_finite(y.v, i, "gradient evaluation");
        check_finite(y.d, i, "gradient evaluation");
        g[i] = y.d;
    }
    return g;
}

// One hyper-dual pass: mixed partial d2f/dwi dwj.
inline double mixed_partial(const ScalarFn& f, std::span<const double> w,
                            std::size_t i, std::size_t j) {
    const std::size_t d = w.size();
    std::vector<Dual2> x(d);
    for (std::size_t k = 0; k < d; ++k)
        x[k] = Dual2(w[k], k == i ? 1.0 : 0.0, k == j ? 1.0 : 0.0, 0.0);
    const Dual2 y = f.dual2(x);
    check_finite(y.v, i, "Hessian evaluation");
    check_finite(y.dxy, i, "Hessian evaluation");
    return y.dxy;
}

// Exact Hessian; the (i,j)/(j,i) seed orders are averaged so the result is
// symmetric to the last bit.
inline Matrix hess_scalar(const ScalarFn& f, std::span<const double> w) {
    const std::size_t d = w.size();
    Matrix h(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        h(i, i) = mixed_partial(f, w, i, i);
        for (std::size_t j = i + 1; j < d; ++j) {
            const double ij = mixed_partial(f, w, i, j);
            const double ji = mixed_partial(f, w, j, i);
            h(i, j) = h(j, i) = 0.5 * (ij + ji);
        }
    }
    return h;
}

// Central-difference gradient; verification oracle only.
inline Vec fd_grad(const ScalarFn& f, std::span<const double> w, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("fd_grad: step h must be positive");
    const std::size_t d = w.size();
    Vec wp(w.begin(), w.end());
    Vec g(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double wi = wp[i];
        wp[i] = wi + h;
        const double fp = f.real(wp);
        wp[i] = wi - h;
        const double fm = f.real(wp);
        wp[i] = wi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

}  // namespace aga
