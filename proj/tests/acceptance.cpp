// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1-10 cover derivative accuracy, the Helmholtz split,
// public-goods limits, the adjusted-gradient angle property, the toy-game
// sign ablation and alignment, SGA on the cyclic game, metrics, CLI
// determinism, and fixed-point classification.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aga/analysis.hpp"
#include "aga/experiment.hpp"

using namespace aga;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
    }
    double gaussian() {
        const double u1 = std::max(uniform(0, 1), 1e-300), u2 = uniform(0, 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
};

Vec random_point(Rng& rng, std::size_t d, double lo = -2.0, double hi = 2.0) {
    Vec w(d);
    for (auto& x : w) x = rng.uniform(lo, hi);
    return w;
}

std::vector<GameDefinition> builtin_games() {
    std::vector<GameDefinition> games;
    games.push_back(toy_example());
    games.push_back(public_goods({1.0, 1.5, 2}));
    games.push_back(bilinear_zero_sum());
    games.push_back(quadratic_game({Matrix::identity(2), Matrix::identity(2)},
                                   {{1.0, 1.0}, {0.0, 0.0}}, {1, 1}));
    return games;
}

// Random symmetric matrix with spectrum inside [2,3]: Q = R diag(mu) R^T for
// a random orthogonal R built by Gram-Schmidt.
Matrix random_spd_bounded(Rng& rng, std::size_t d) {
    std::vector<Vec> basis;
    while (basis.size() < d) {
        Vec v(d);
        for (auto& x : v) x = rng.gaussian();
        for (const auto& b : basis) {
            const double p = dot(v, b);
            for (std::size_t i = 0; i < d; ++i) v[i] -= p * b[i];
        }
        const double nv = norm(v);
        if (nv < 1e-6) continue;
        for (auto& x : v) x /= nv;
        basis.push_back(std::move(v));
    }
    Vec mu(d);
    for (auto& m : mu) m = rng.uniform(2.0, 3.0);
    Matrix q(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            double s = 0;
            for (std::size_t k = 0; k < d; ++k) s += basis[k][r] * mu[k] * basis[k][c];
            q(r, c) = s;
        }
    // enforce exact symmetry for quadratic_game
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r + 1; c < d; ++c) q(r, c) = q(c, r) = 0.5 * (q(r, c) + q(c, r));
    return q;
}

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(101);
    bool ok = true;
    std::string detail;
    for (const auto& game : builtin_games()) {
        for (int k = 0; k < 100 && ok; ++k) {
            const Vec w = random_point(rng, game.dim());
            for (const auto& loss : game.losses) {
                const Vec g = grad_scalar(loss, w);
                const Vec fd = fd_grad(loss, w, 1e-4);
                for (std::size_t i = 0; i < w.size(); ++i) {
                    if (std::abs(g[i] - fd[i]) > std::max(1e-5 * std::abs(fd[i]), 1e-7)) {
                        ok = false;
                        detail = "mismatch in game " + game.name;
                    }
                }
            }
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 2.0) {
        ok = false;
        detail = "took " + std::to_string(secs) + " s";
    }
    report(1, "forward gradients match the finite-difference oracle", ok, detail);
}

void criterion2() {
    Rng rng(102);
    bool ok = true;
    for (const auto& game : builtin_games()) {
        for (int k = 0; k < 100 && ok; ++k) {
            const GradientBundle b = bundle(game, random_point(rng, game.dim()));
            const std::size_t d = game.dim();
            for (std::size_t r = 0; r < d && ok; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    if (std::abs(b.s(r, c) + b.a(r, c) - b.h(r, c)) > 1e-12 ||
                        std::abs(b.s(r, c) - b.s(c, r)) > 1e-12 ||
                        std::abs(b.a(r, c) + b.a(c, r)) > 1e-12)
                        ok = false;
        }
    }
    report(2, "Helmholtz decomposition identities (S+A=H, S sym, A antisym)", ok);
}

void criterion3() {
    const GameDefinition g = public_goods({1.0, 1.5, 2});
    Rng rng(103);
    std::vector<Vec> inits;
    for (int r = 0; r < 50; ++r) inits.push_back(random_point(rng, 2, 0.0, 1.0));

    auto limit_cfg = [](Method m) {
        MethodConfig cfg;
        cfg.method = m;
        cfg.lambda_mag = 1.0;
        cfg.gamma = 0.01;
        cfg.max_steps = 5000;
        cfg.projection = Box{{0.0}, {1.0}};
        return cfg;
    };

    bool ok = true;
    std::string detail;
    for (const Vec& w0 : inits) {
        const auto ind = descend(g, w0, limit_cfg(Method::SimulInd)).steps.back();
        if (std::abs(ind.w[0]) > 1e-3 || std::abs(ind.w[1]) > 1e-3 ||
            std::abs(social_welfare(ind.rewards) - 2.0) > 0.005) {
            ok = false;
            detail = "SimulInd missed the Nash point";
        }
        for (Method m : {Method::SimulCo, Method::AgA}) {
            const auto last = descend(g, w0, limit_cfg(m)).steps.back();
            if (std::abs(last.w[0] - 1.0) > 1e-3 || std::abs(last.w[1] - 1.0) > 1e-3 ||
                std::abs(social_welfare(last.rewards) - 3.0) > 0.005 ||
                equality(last.rewards).equality < 0.999) {
                ok = false;
                detail = method_name(m) + " missed the social optimum";
            }
        }
    }

    // ordering under the 100-step cap
    std::map<Method, double> mean_sw;
    for (Method m : {Method::SimulInd, Method::SimulCo, Method::CGA, Method::SGA,
                     Method::AgA}) {
        MethodConfig cfg;
        cfg.method = m;
        cfg.lambda_mag = 1.0;
        cfg.gamma = 0.05;
        cfg.max_steps = 100;
        cfg.projection = Box{{0.0}, {1.0}};
        double sum = 0;
        for (const Vec& w0 : inits)
            sum += social_welfare(descend(g, w0, cfg).steps.back().rewards);
        mean_sw[m] = sum / 50.0;
    }
    if (!(mean_sw[Method::AgA] >= mean_sw[Method::SimulCo] - 1e-9 &&
          mean_sw[Method::SimulCo] > mean_sw[Method::SimulInd] &&
          mean_sw[Method::SimulCo] > mean_sw[Method::CGA] &&
          mean_sw[Method::SimulCo] > mean_sw[Method::SGA])) {
        ok = false;
        detail = "welfare ordering not reproduced";
    }
    report(3, "public goods limits and welfare ordering", ok, detail);
}

void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(104);
    bool ok = true;
    std::string detail;
    int tested = 0;
    while (tested < 1000 && ok) {
        const std::size_t d = 2 + static_cast<std::size_t>(rng.g() % 5);
        const Matrix q = random_spd_bounded(rng, d);
        const Vec t = random_point(rng, d, -1.0, 1.0);
        for (double sign : {1.0, -1.0}) {
            const Matrix qs = sign * q;
            // common-payoff pair: both players share the same quadratic loss
            const GameDefinition game =
                quadratic_game({qs, qs}, {t, t}, {1, d - 1});
            const Vec w = random_point(rng, d);
            const GradientBundle b = bundle(game, w);
            if (norm(b.xi_c) < 1e-8 || norm(b.grad_hc) < 1e-12) continue;

            MethodConfig cfg;
            cfg.method = Method::AgA;
            cfg.lambda_mag = 0.01;
            const Direction dir = direction(game, w, cfg);
            const double before = angle(b.xi_c, b.grad_hc);
            const double after = angle(dir.d, b.grad_hc);
            if (sign > 0 && after > before + 1e-9) {
                ok = false;
                detail = "positive-definite case not pulled toward grad Hc";
            }
            if (sign < 0 && after < before - 1e-9) {
                ok = false;
                detail = "negative-definite case not pushed away";
            }
        }
        ++tested;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 5.0) {
        ok = false;
        detail = "took " + std::to_string(secs) + " s";
    }
    report(4, "adjusted-gradient angle property on quadratic collective games", ok,
           detail);
}

// steps until ||xi_c|| <= 1e-3, capped
std::size_t steps_to_collective_rest(const GameDefinition& g, Vec w,
                                     const MethodConfig& cfg, std::size_t cap) {
    for (std::size_t k = 0; k < cap; ++k) {
        if (norm(grad_scalar(g.collective, w)) <= 1e-3) return k;
        const Direction dir = direction(g, w, cfg);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.gamma * dir.d[i];
        for (auto& x : w) x = std::clamp(x, -2.0, 2.0);
    }
    return cap;
}

MethodConfig toy_cfg(Method m) {
    MethodConfig cfg;
    cfg.method = m;
    cfg.lambda_mag = 0.5;
    cfg.gamma = 0.02;
    cfg.max_steps = 250;
    cfg.projection = Box{{-2.0}, {2.0}};
    return cfg;
}

std::vector<Vec> toy_grid() {
    std::vector<Vec> grid;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            grid.push_back({-1.0 + 0.25 * i, -1.0 + 0.25 * j});
    return grid;
}

void criterion5() {
    const GameDefinition g = toy_example();
    const std::size_t cap = 3000;
    int better = 0;
    bool never_much_worse = true;
    for (const Vec& w0 : toy_grid()) {
        const std::size_t with_sign =
            steps_to_collective_rest(g, w0, toy_cfg(Method::AgA), cap);
        const std::size_t without =
            steps_to_collective_rest(g, w0, toy_cfg(Method::AgANoSign), cap);
        if (with_sign <= without) ++better;
        if (static_cast<double>(with_sign) > 1.1 * static_cast<double>(without))
            never_much_worse = false;
    }
    const bool ok = better >= 18 && never_much_worse;
    report(5, "sign selection reaches collective rest at least as fast", ok,
           "faster-or-equal in " + std::to_string(better) + "/25 inits");
}

void criterion6() {
    const GameDefinition g = toy_example();
    int welfare_ok = 0, min_r1_ok = 0;
    for (const Vec& w0 : toy_grid()) {
        std::map<Method, Trajectory> runs;
        for (Method m : {Method::SimulInd, Method::SimulCo, Method::CGA, Method::SGA,
                         Method::AgA})
            runs[m] = descend(g, w0, toy_cfg(m));

        auto final_collective = [&](Method m) {
            return -runs[m].steps.back().loss_c;
        };
        const double aga = final_collective(Method::AgA);
        const double co = final_collective(Method::SimulCo);
        if (aga >= final_collective(Method::SimulInd) - 1e-12 &&
            aga >= final_collective(Method::CGA) - 1e-12 &&
            aga >= final_collective(Method::SGA) - 1e-12 &&
            aga >= co - 0.05 * std::abs(co))
            ++welfare_ok;

        auto min_r1 = [&](Method m) {
            double lo = std::numeric_limits<double>::infinity();
            for (const auto& rec : runs[m].steps) lo = std::min(lo, rec.rewards[0]);
            return lo;
        };
        if (min_r1(Method::AgA) >= min_r1(Method::SimulCo) - 1e-12) ++min_r1_ok;
    }
    const bool ok = welfare_ok == 25 && min_r1_ok >= 18;
    report(6, "toy-game alignment of collective and player-1 interests", ok,
           "welfare " + std::to_string(welfare_ok) + "/25, min-r1 " +
               std::to_string(min_r1_ok) + "/25");
}

void criterion7() {
    const GameDefinition g = bilinear_zero_sum();

    MethodConfig ind;
    ind.method = Method::SimulInd;
    ind.gamma = 0.1;
    ind.max_steps = 1000;
    const Trajectory t = descend(g, Vec{1.0, 1.0}, ind);
    bool non_decreasing = true;
    for (std::size_t k = 1; k < t.steps.size(); ++k)
        if (norm(t.steps[k].w) < norm(t.steps[k - 1].w) - 1e-12) non_decreasing = false;

    MethodConfig sga;
    sga.method = Method::SGA;
    sga.lambda_mag = 1.0;
    sga.gamma = 0.1;
    sga.max_steps = 10000;
    Vec w{1.0, 1.0};
    bool converged = false;
    for (std::size_t k = 0; k < 10000 && !converged; ++k) {
        const Direction dir = direction(g, w, sga);
        for (std::size_t i = 0; i < 2; ++i) w[i] -= sga.gamma * dir.d[i];
        if (norm(w) < 1e-3) converged = true;
    }
    report(7, "cyclic game: individual descent spirals out, SGA converges",
           non_decreasing && converged);
}

void criterion8() {
    bool ok = true;
    Vec equal{1.0, 1.0};
    if (equality(equal).equality != 1.0) ok = false;
    Vec skew{0.0, 1.0};
    if (std::abs(equality(skew).equality - 0.5) > 1e-12) ok = false;

    Rng rng(108);
    for (int t = 0; t < 100 && ok; ++t) {
        const std::size_t n = 2 + rng.g() % 5;
        Vec r(n);
        for (auto& x : r) x = rng.uniform(0.1, 3.0);
        const double e0 = equality(r).equality;
        Vec scaled(r);
        const double k = rng.uniform(0.5, 4.0);
        for (auto& x : scaled) x *= k;
        if (std::abs(equality(scaled).equality - e0) > 1e-12) ok = false;
        Vec shuffled(r);
        for (std::size_t i = n - 1; i > 0; --i)
            std::swap(shuffled[i], shuffled[rng.g() % (i + 1)]);
        if (std::abs(equality(shuffled).equality - e0) > 1e-12) ok = false;
    }
    report(8, "equality metric values and invariances", ok);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_dir_bytes(const fs::path& a, const fs::path& b) {
    std::vector<fs::path> fa, fb;
    for (const auto& e : fs::directory_iterator(a)) fa.push_back(e.path().filename());
    for (const auto& e : fs::directory_iterator(b)) fb.push_back(e.path().filename());
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    if (fa != fb) return false;
    for (const auto& name : fa)
        if (slurp(a / name) != slurp(b / name)) return false;
    return !fa.empty();
}

void criterion9() {
    const fs::path base = fs::temp_directory_path() / "aga_acceptance_det";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string cli = AGA_CLI_PATH;
    const std::string cfg = std::string(AGA_CONFIG_DIR) + "/publicgoods_table1.json";

    auto invoke = [&](const std::string& out, const std::string& extra) {
        const std::string cmd = "\"" + cli + "\" " + extra + " run \"" + cfg +
                                "\" --out \"" + out + "\" > /dev/null";
        return std::system(cmd.c_str()) == 0;
    };

    bool ok = invoke((base / "a").string(), "") && invoke((base / "b").string(), "") &&
              invoke((base / "c").string(), "--jobs 4") &&
              invoke((base / "d").string(), "--jobs 1");
    std::string detail;
    if (ok) {
        if (!same_dir_bytes(base / "a", base / "b")) {
            ok = false;
            detail = "repeat invocations differ";
        } else if (!same_dir_bytes(base / "c", base / "d")) {
            ok = false;
            detail = "jobs=4 and jobs=1 differ";
        }
    } else {
        detail = "cli invocation failed";
    }
    report(9, "run output is byte-identical across repeats and job counts", ok, detail);
}

void criterion10() {
    auto quad = [](double a, double b) {
        GameDefinition g;
        g.name = "quad";
        g.n = 2;
        g.dims = {1, 1};
        g.losses.emplace_back([a]<class T>(std::span<const T> w) -> T {
            return T(0.5 * a) * w[0] * w[0];
        });
        g.losses.emplace_back([b]<class T>(std::span<const T> w) -> T {
            return T(0.5 * b) * w[1] * w[1];
        });
        g.collective = ScalarFn([a, b]<class T>(std::span<const T> w) -> T {
            return T(0.5 * a) * w[0] * w[0] + T(0.5 * b) * w[1] * w[1];
        });
        return g;
    };
    Vec origin{0.0, 0.0};
    const auto s = classify_point(quad(1, 1), origin, true);
    const auto u = classify_point(quad(-1, -1), origin, true);
    const auto i = classify_point(quad(1, -1), origin, true);
    const bool ok = s.cls == PointClass::stable && u.cls == PointClass::unstable &&
                    i.cls == PointClass::indefinite && s.residual <= 1e-12 &&
                    u.residual <= 1e-12 && i.residual <= 1e-12;
    report(10, "fixed-point classification of the three model quadratics", ok);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
