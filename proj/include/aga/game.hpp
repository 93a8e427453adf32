#pragma once

// The differentiable mixed-motive game abstraction and the built-in games.
// Convention used throughout: rewards are the negation of losses, r_i = -l_i.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aga/deriv.hpp"
#include "aga/matrix.hpp"

namespace aga {

template <class T>
T eval_loss(const ScalarFn& f, std::span<const T> w) {
    if constexpr (std::is_same_v<T, double>)
        return f.real(w);
    else if constexpr (std::is_same_v<T, Dual1>)
        return f.dual1(w);
    else
        return f.dual2(w);
}

// Joint parameter point with the per-player slicing map.
struct ParamVector {
    Vec values;
    std::vector<std::size_t> offsets;  // offsets[i] = start of player i's slice

    std::size_t dim() const { return values.size(); }
    std::size_t slice_begin(std::size_t player) const { return offsets[player]; }
    std::size_t slice_end(std::size_t player) const {
        return player + 1 < offsets.size() ? offsets[player + 1] : values.size();
    }
};

struct GameDefinition {
    std::string name;
    std::size_t n = 0;              // player count
    std::vector<std::size_t> dims;  // per-player parameter dimension
    std::vector<ScalarFn> losses;   // l_i : R^d -> R
    ScalarFn collective;            // l_c : R^d -> R, default sum of l_i

    std::size_t dim() const {
        std::size_t d = 0;
        for (auto di : dims) d += di;
        return d;
    }

    ParamVector point(Vec w) const {
        ParamVector p;
        p.values = std::move(w);
        p.offsets.resize(n);
        std::size_t off = 0;
        for (std::size_t i = 0; i < n; ++i) {
            p.offsets[i] = off;
            off += dims[i];
        }
        return p;
    }

    double reward(std::size_t player, std::span<const double> w) const {
        return -losses[player].real(w);
    }
};

struct PublicGoodsParams {
    double b = 1.0;   // per-player budget
    double c = 1.5;   // redistribution multiplier, 1 < c <= 2
    std::size_t n = 2;
};

struct SvoParams {
    double alpha = 0.0;  // shaping weight, >= 0
};

// Two-player game of Example-1 type: l1 = -sin(a1 a2 + a2^2),
// l2 = -[cos(1 + a1 - (1+a2)^2) + a1 a2^2].
GameDefinition toy_example();

// n-player public goods game: payoff p_i = b - a_i + (c/n) sum_j a_j,
// loss l_i = -p_i. The action box [0,b] is enforced by the optimizer's
// projection option, not baked into the losses.
GameDefinition public_goods(const PublicGoodsParams& p);

// Per-player quadratic losses l_i = 1/2 (w - t_i)^T Q_i (w - t_i).
GameDefinition quadratic_game(std::vector<Matrix> q, std::vector<Vec> targets,
                              std::vector<std::size_t> dims);

// The classic cyclic two-player game l1 = w1 w2, l2 = -w1 w2.
GameDefinition bilinear_zero_sum();

// Social-value-orientation reward shaping: the shaped reward is
// r_i - alpha (1 - arctan(sum_{j != i} r_j / r_i)).
GameDefinition svo_shaped(const GameDefinition& base, const SvoParams& p);

}  // namespace aga
