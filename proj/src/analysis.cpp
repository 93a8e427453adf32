#include "aga/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aga {

std::string point_class_name(PointClass c) {
    switch (c) {
        case PointClass::stable: return "stable";
        case PointClass::unstable: return "unstable";
        case PointClass::indefinite: return "indefinite";
        case PointClass::not_fixed: return "not_fixed";
    }
    throw std::invalid_argument("unknown point class");
}

Vec sym_eigvals(Matrix m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("sym_eigvals: matrix must be square");
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c)
            if (std::abs(m(r, c) - m(c, r)) > 1e-9)
                throw std::invalid_argument("sym_eigvals: matrix is not symmetric");

    double frob = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) frob += m(r, c) * m(r, c);
    frob = std::sqrt(frob);
    const double target = 1e-12 * frob;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c) s += 2.0 * m(r, c) * m(r, c);
        return std::sqrt(s);
    };

    // Cyclic Jacobi sweeps.
    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (m(p, q) == 0.0) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double mpq = m(p, q), mpp = m(p, p), mqq = m(q, q);
                m(p, q) = m(q, p) = 0.0;
                m(p, p) = mpp - t * mpq;
                m(q, q) = mqq + t * mpq;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double mrp = m(r, p), mrq = m(r, q);
                    m(r, p) = m(p, r) = mrp - s * (mrq + tau * mrp);
                    m(r, q) = m(q, r) = mrq + s * (mrp - tau * mrq);
                }
            }
        }
    }

    Vec ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

FixedPointReport classify_point(const GameDefinition& game, std::span<const double> w,
                                bool use_collective, const ClassifyOptions& opt) {
    if (!(opt.tol > 0.0)) throw std::invalid_argument("classify_point: tol must be > 0");
    const GradientBundle b = bundle(game, w);

    FixedPointReport report;
    report.point.assign(w.begin(), w.end());
    report.residual = use_collective ? norm(b.xi_c) : norm(b.xi);
    report.eigenvalues = sym_eigvals(use_collective ? b.h_c : b.s);

    if (report.residual > opt.tol) {
        report.cls = PointClass::not_fixed;
        return report;
    }
    const double lo = report.eigenvalues.front();
    const double hi = report.eigenvalues.back();
    bool invertible = true;
    for (double ev : report.eigenvalues)
        if (std::abs(ev) <= opt.tol_det) invertible = false;

    if (lo >= -opt.eig_slack && invertible)
        report.cls = PointClass::stable;
    else if (hi < 0.0)
        report.cls = PointClass::unstable;
    else
        report.cls = PointClass::indefinite;
    return report;
}

double social_welfare(std::span<const double> rewards) {
    double s = 0.0;
    for (double r : rewards) s += r;
    return s;
}

EqualityResult equality(std::span<const double> rewards) {
    const std::size_t n = rewards.size();
    if (n < 1) throw std::invalid_argument("equality: need at least one reward");
    Vec p(rewards.begin(), rewards.end());
    std::sort(p.begin(), p.end());
    double mean = 0.0;
    for (double x : p) mean += x;
    mean /= static_cast<double>(n);
    if (mean == 0.0) throw std::invalid_argument("equality: undefined for zero-mean rewards");

    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += static_cast<double>(i + 1) * (p[i] - mean);
    const double g = 2.0 * s / (static_cast<double>(n) * static_cast<double>(n) * mean);
    return {g, 1.0 - g};
}

double angle(std::span<const double> a, std::span<const double> b) {
    const double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0)
        throw std::invalid_argument("angle: undefined for a zero vector");
    const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
    return std::acos(c);
}

int alignment_sign(const GameDefinition& game, std::span<const double> w, double epsilon) {
    const GradientBundle b = bundle(game, w);
    const double arg = dot(b.xi_c, b.grad_hc) *
                       (dot(b.xi, b.grad_hc) + dot(b.grad_hc, b.grad_hc));
    return (arg + epsilon) < 0.0 ? -1 : 1;
}

}  // namespace aga
