#pragma once

// Gradient dynamics: simultaneous individual/collective descent, CGA, SGA,
// and altruistic gradient adjustment with and without sign selection,
// together with the plain descent loop.

#include <functional>
#include <optional>
#include <string>

#include "aga/game.hpp"
#include "aga/matrix.hpp"

namespace aga {

// Everything the dynamics need at one parameter point.
struct GradientBundle {
    Vec xi;        // simultaneous gradient: block i is grad of l_i w.r.t. w_i
    Vec xi_c;      // gradient of the collective loss
    Vec grad_hc;   // H_c^T xi_c, the gradient of 1/2 ||xi_c||^2
    Matrix h;      // game Hessian, Jacobian of xi; generally non-symmetric
    Matrix h_c;    // collective Hessian, symmetric
    Matrix s;      // (H + H^T)/2
    Matrix a;      // (H - H^T)/2
};

enum class Method { SimulInd, SimulCo, CGA, SGA, AgA, AgANoSign };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

struct Box {
    Vec lo, hi;  // size d, or size 1 meaning the same bound per coordinate
};

struct MethodConfig {
    Method method = Method::SimulInd;
    double lambda_mag = 1.0;
    double gamma = 0.01;       // step size
    double epsilon = 1e-10;    // sign tie-break
    std::size_t max_steps = 100;
    double stop_tol = 0.0;     // stop when the direction norm drops below this
    std::optional<Box> projection;

    void validate(std::size_t d) const;
};

struct StepRecord {
    std::size_t step = 0;
    Vec w;
    Vec rewards;          // r_i = -l_i
    double loss_c = 0.0;
    double dir_norm = 0.0;
    double lambda_signed = 0.0;
};

enum class StopReason { converged, max_steps };

struct Trajectory {
    std::vector<StepRecord> steps;
    StopReason reason = StopReason::max_steps;
};

struct Direction {
    Vec d;
    double lambda_signed = 0.0;
};

GradientBundle bundle(const GameDefinition& game, std::span<const double> w);

// The update direction the learning rule subtracts, w <- w - gamma * dir.
Direction direction(const GameDefinition& game, std::span<const double> w,
                    const MethodConfig& cfg);

using StepObserver = std::function<void(const StepRecord&)>;

Trajectory descend(const GameDefinition& game, Vec w0, const MethodConfig& cfg,
                   const StepObserver& observer = nullptr);

}  // namespace aga
