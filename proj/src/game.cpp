#include "aga/game.hpp"

#include <sstream>
#include <stdexcept>

namespace aga {

namespace {

ScalarFn sum_collective(std::vector<ScalarFn> losses) {
    return ScalarFn([losses = std::move(losses)]<class T>(std::span<const T> w) -> T {
        T s(0.0);
        for (const auto& l : losses) s += eval_loss<T>(l, w);
        return s;
    });
}

template <class T>
std::string point_string(std::span<const T> w) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < w.size(); ++i)
        os << (i ? ", " : "") << value_of(w[i]);
    os << ")";
    return os.str();
}

}  // namespace

GameDefinition toy_example() {
    GameDefinition g;
    g.name = "toy";
    g.n = 2;
    g.dims = {1, 1};
    g.losses.emplace_back([]<class T>(std::span<const T> a) -> T {
        using std::sin;
        return -sin(a[0] * a[1] + a[1] * a[1]);
    });
    g.losses.emplace_back([]<class T>(std::span<const T> a) -> T {
        using std::cos;
        const T one(1.0);
        const T u = one + a[0] - (one + a[1]) * (one + a[1]);
        return -(cos(u) + a[0] * a[1] * a[1]);
    });
    g.collective = sum_collective(g.losses);
    return g;
}

GameDefinition public_goods(const PublicGoodsParams& p) {
    if (!(p.c > 1.0 && p.c <= 2.0))
        throw std::invalid_argument("public_goods: need 1 < c <= 2");
    if (!(p.b > 0.0)) throw std::invalid_argument("public_goods: need b > 0");
    if (p.n < 1) throw std::invalid_argument("public_goods: need n >= 1");

    GameDefinition g;
    g.name = "public_goods";
    g.n = p.n;
    g.dims.assign(p.n, 1);
    const double share = p.c / static_cast<double>(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        g.losses.emplace_back([i, b = p.b, share]<class T>(std::span<const T> a) -> T {
            T pool(0.0);
            for (const auto& aj : a) pool += aj;
            // payoff p_i = b - a_i + share * pool; loss is the negation
            return -(T(b) - a[i] + T(share) * pool);
        });
    }
    g.collective = sum_collective(g.losses);
    return g;
}

GameDefinition quadratic_game(std::vector<Matrix> q, std::vector<Vec> targets,
                              std::vector<std::size_t> dims) {
    if (q.size() != targets.size() || q.size() != dims.size())
        throw std::invalid_argument("quadratic_game: player count mismatch");
    std::size_t d = 0;
    for (auto di : dims) d += di;
    for (const auto& m : q) {
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("quadratic_game: Q must be d x d");
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = r + 1; c < d; ++c)
                if (std::abs(m(r, c) - m(c, r)) > 1e-12)
                    throw std::invalid_argument("quadratic_game: Q must be symmetric");
    }

    GameDefinition g;
    g.name = "quadratic";
    g.n = q.size();
    g.dims = std::move(dims);
    for (std::size_t i = 0; i < g.n; ++i) {
        g.losses.emplace_back(
            [qi = q[i], ti = targets[i]]<class T>(std::span<const T> w) -> T {
                const std::size_t d = w.size();
                T s(0.0);
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < d; ++c)
                        s += T(qi(r, c)) * (w[r] - T(ti[r])) * (w[c] - T(ti[c]));
                return T(0.5) * s;
            });
    }
    g.collective = sum_collective(g.losses);
    return g;
}

GameDefinition bilinear_zero_sum() {
    GameDefinition g;
    g.name = "bilinear_zero_sum";
    g.n = 2;
    g.dims = {1, 1};
    g.losses.emplace_back([]<class T>(std::span<const T> w) -> T { return w[0] * w[1]; });
    g.losses.emplace_back([]<class T>(std::span<const T> w) -> T { return -(w[0] * w[1]); });
    g.collective = sum_collective(g.losses);
    return g;
}

GameDefinition svo_shaped(const GameDefinition& base, const SvoParams& p) {
    if (!(p.alpha >= 0.0)) throw std::invalid_argument("svo_shaped: need alpha >= 0");

    GameDefinition g;
    g.name = base.name + "_svo";
    g.n = base.n;
    g.dims = base.dims;

    auto shaped_reward = [losses = base.losses,
                          alpha = p.alpha]<class T>(std::size_t i, std::span<const T> w) -> T {
        using std::atan;
        const T ri = -eval_loss<T>(losses[i], w);
        if (value_of(ri) == 0.0)
            throw EvalError("svo shaping: zero reward for player " + std::to_string(i + 1) +
                            " at " + point_string(w));
        T others(0.0);
        for (std::size_t j = 0; j < losses.size(); ++j)
            if (j != i) others += -eval_loss<T>(losses[j], w);
        return ri - T(alpha) * (T(1.0) - atan(others / ri));
    };

    for (std::size_t i = 0; i < g.n; ++i) {
        g.losses.emplace_back([shaped_reward, i]<class T>(std::span<const T> w) -> T {
            return -shaped_reward(i, w);
        });
    }
    g.collective = sum_collective(g.losses);
    return g;
}

}  // namespace aga
