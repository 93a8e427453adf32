#include "aga/adjust.hpp"

#include <algorithm>
#include <stdexcept>

namespace aga {

Method method_from_name(const std::string& name) {
    if (name == "SimulInd") return Method::SimulInd;
    if (name == "SimulCo") return Method::SimulCo;
    if (name == "CGA") return Method::CGA;
    if (name == "SGA") return Method::SGA;
    if (name == "AgA") return Method::AgA;
    if (name == "AgANoSign") return Method::AgANoSign;
    throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::SimulInd: return "SimulInd";
        case Method::SimulCo: return "SimulCo";
        case Method::CGA: return "CGA";
        case Method::SGA: return "SGA";
        case Method::AgA: return "AgA";
        case Method::AgANoSign: return "AgANoSign";
    }
    throw std::invalid_argument("unknown method enum");
}

void MethodConfig::validate(std::size_t d) const {
    if (!(gamma > 0.0)) throw std::invalid_argument("method config: gamma must be > 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("method config: epsilon must be > 0");
    if (!(lambda_mag >= 0.0))
        throw std::invalid_argument("method config: lambda magnitude must be >= 0");
    if (projection) {
        const auto& box = *projection;
        if (box.lo.size() != box.hi.size() ||
            (box.lo.size() != 1 && box.lo.size() != d))
            throw std::invalid_argument("method config: projection box has wrong size");
        for (std::size_t i = 0; i < box.lo.size(); ++i)
            if (!(box.lo[i] <= box.hi[i]))
                throw std::invalid_argument("method config: projection needs lo <= hi");
    }
}

GradientBundle bundle(const GameDefinition& game, std::span<const double> w) {
    const std::size_t d = game.dim();
    if (w.size() != d) throw std::invalid_argument("bundle: point has wrong dimension");

    GradientBundle b;
    b.xi.assign(d, 0.0);
    b.h = Matrix(d, d);

    // Row-block i of both xi and H comes from player i's own loss.
    std::size_t off = 0;
    for (std::size_t i = 0; i < game.n; ++i) {
        const Vec gi = grad_scalar(game.losses[i], w);
        const Matrix hi = hess_scalar(game.losses[i], w);
        for (std::size_t r = off; r < off + game.dims[i]; ++r) {
            b.xi[r] = gi[r];
            for (std::size_t c = 0; c < d; ++c) b.h(r, c) = hi(r, c);
        }
        off += game.dims[i];
    }

    b.xi_c = grad_scalar(game.collective, w);
    b.h_c = hess_scalar(game.collective, w);
    b.grad_hc = b.h_c.apply(b.xi_c);
    b.s = 0.5 * (b.h + b.h.transpose());
    b.a = 0.5 * (b.h - b.h.transpose());
    return b;
}

namespace {

double sign_with_tiebreak(double x, double eps) {
    return (x + eps) < 0.0 ? -1.0 : 1.0;
}

Vec axpy(const Vec& x, double lambda, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + lambda * y[i];
    return r;
}

}  // namespace

Direction direction(const GameDefinition& game, std::span<const double> w,
                    const MethodConfig& cfg) {
    const std::size_t d = game.dim();
    cfg.validate(d);
    const GradientBundle b = bundle(game, w);

    switch (cfg.method) {
        case Method::SimulInd:
            return {b.xi, 0.0};
        case Method::SimulCo:
            return {b.xi_c, 0.0};
        case Method::CGA: {
            const Vec htxi = b.h.transpose().apply(b.xi);
            return {axpy(b.xi, cfg.lambda_mag, htxi), cfg.lambda_mag};
        }
        case Method::SGA: {
            const Vec htxi = b.h.transpose().apply(b.xi);
            const Vec atxi = b.a.transpose().apply(b.xi);
            const double arg =
                dot(b.xi, htxi) * dot(atxi, htxi) / static_cast<double>(d);
            const double lambda =
                cfg.lambda_mag * sign_with_tiebreak(arg, cfg.epsilon);
            return {axpy(b.xi, lambda, atxi), lambda};
        }
        case Method::AgA:
        case Method::AgANoSign: {
            double lambda = cfg.lambda_mag;
            if (cfg.method == Method::AgA) {
                const double arg = dot(b.xi_c, b.grad_hc) *
                                   (dot(b.xi, b.grad_hc) + dot(b.grad_hc, b.grad_hc)) /
                                   static_cast<double>(d);
                lambda *= sign_with_tiebreak(arg, cfg.epsilon);
            }
            const Vec adj = axpy(b.xi, 1.0, b.grad_hc);  // xi + grad Hc
            return {axpy(b.xi_c, lambda, adj), lambda};
        }
    }
    throw std::invalid_argument("unknown method enum");
}

namespace {

void project(Vec& w, const Box& box) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double lo = box.lo.size() == 1 ? box.lo[0] : box.lo[i];
        const double hi = box.hi.size() == 1 ? box.hi[0] : box.hi[i];
        w[i] = std::clamp(w[i], lo, hi);
    }
}

}  // namespace

Trajectory descend(const GameDefinition& game, Vec w0, const MethodConfig& cfg,
                   const StepObserver& observer) {
    const std::size_t d = game.dim();
    cfg.validate(d);
    if (w0.size() != d) throw std::invalid_argument("descend: start point has wrong dimension");

    Trajectory traj;
    Vec w = std::move(w0);
    for (std::size_t k = 0;; ++k) {
        const Direction dir = direction(game, w, cfg);

        StepRecord rec;
        rec.step = k;
        rec.w = w;
        rec.rewards.resize(game.n);
        for (std::size_t i = 0; i < game.n; ++i) rec.rewards[i] = game.reward(i, w);
        rec.loss_c = game.collective.real(w);
        rec.dir_norm = norm(dir.d);
        rec.lambda_signed = dir.lambda_signed;
        if (observer) observer(rec);
        traj.steps.push_back(std::move(rec));

        if (traj.steps.back().dir_norm <= cfg.stop_tol) {
            traj.reason = StopReason::converged;
            break;
        }
        if (k == cfg.max_steps) {
            traj.reason = StopReason::max_steps;
            break;
        }
        for (std::size_t i = 0; i < d; ++i) w[i] -= cfg.gamma * dir.d[i];
        if (cfg.projection) project(w, *cfg.projection);
    }
    return traj;
}

}  // namespace aga
