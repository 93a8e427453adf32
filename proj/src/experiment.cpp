#include "aga/experiment.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aga/analysis.hpp"
#include "aga/svg.hpp"

namespace aga {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

Vec as_vec(const json& j, const char* field) {
    if (!j.is_array()) fail(std::string("config: ") + field + " must be an array of numbers");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number()) fail(std::string("config: ") + field + " must be numeric");
        v.push_back(x.get<double>());
    }
    return v;
}

GameDefinition parse_game(const json& j) {
    if (!j.contains("name")) fail("config: game.name is required");
    const std::string name = j.at("name").get<std::string>();
    GameDefinition g;
    if (name == "toy") {
        g = toy_example();
    } else if (name == "public_goods") {
        PublicGoodsParams p;
        p.b = j.value("b", 1.0);
        p.c = j.value("c", 1.5);
        p.n = j.value("players", std::size_t{2});
        try {
            g = public_goods(p);
        } catch (const std::invalid_argument& e) {
            fail(std::string("config: ") + e.what());
        }
    } else if (name == "bilinear_zero_sum") {
        g = bilinear_zero_sum();
    } else {
        fail("config: unknown game '" + name + "'");
    }
    if (j.contains("svo_alpha")) {
        const double alpha = j.at("svo_alpha").get<double>();
        g = svo_shaped(g, SvoParams{alpha});
    }
    return g;
}

MethodEntry parse_method(const json& j, std::size_t d) {
    MethodEntry e;
    if (!j.contains("method")) fail("config: methods[].method is required");
    try {
        e.cfg.method = method_from_name(j.at("method").get<std::string>());
    } catch (const std::invalid_argument& ex) {
        fail(std::string("config: ") + ex.what());
    }
    e.label = j.value("label", method_name(e.cfg.method));
    e.cfg.lambda_mag = j.value("lambda", 1.0);
    e.cfg.gamma = j.value("gamma", 0.01);
    e.cfg.epsilon = j.value("epsilon", 1e-10);
    e.cfg.max_steps = j.value("max_steps", std::size_t{100});
    e.cfg.stop_tol = j.value("stop_tol", 0.0);
    if (j.contains("projection")) {
        const auto& p = j.at("projection");
        Box box;
        if (p.is_array() && p.size() == 2 && p[0].is_number()) {
            box.lo = {p[0].get<double>()};
            box.hi = {p[1].get<double>()};
        } else if (p.is_object()) {
            box.lo = p.at("lo").is_number() ? Vec{p.at("lo").get<double>()}
                                            : as_vec(p.at("lo"), "projection.lo");
            box.hi = p.at("hi").is_number() ? Vec{p.at("hi").get<double>()}
                                            : as_vec(p.at("hi"), "projection.hi");
        } else {
            fail("config: projection must be [lo, hi] or {lo, hi}");
        }
        e.cfg.projection = std::move(box);
    }
    try {
        e.cfg.validate(d);
    } catch (const std::invalid_argument& ex) {
        fail(std::string("config: ") + ex.what());
    }
    return e;
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')
                   ? c : '_';
    return out;
}

// Deterministic uniform double from the raw 64-bit stream; avoids relying on
// std::uniform_real_distribution's unspecified algorithm.
double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

Vec initial_point(const ExperimentConfig& cfg, std::size_t run_index) {
    if (cfg.init.kind == InitSpec::Kind::fixed) return cfg.init.fixed_w;
    std::mt19937_64 g(cfg.seed ^ static_cast<std::uint64_t>(run_index));
    Vec w(cfg.init.lo.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = cfg.init.lo[i] + (cfg.init.hi[i] - cfg.init.lo[i]) * uniform01(g);
    return w;
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct Stats {
    double mean = 0, stddev = 0;
};

Stats mean_std(const Vec& xs) {
    Stats s;
    if (xs.empty()) return s;
    for (double x : xs) s.mean += x;
    s.mean /= static_cast<double>(xs.size());
    double v = 0;
    for (double x : xs) v += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(v / static_cast<double>(xs.size()));
    return s;
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("config: cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("config: parse error at line " +
             std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
    }

    ExperimentConfig cfg;
    try {
        cfg.name = j.value("name", path.stem().string());
        if (!j.contains("game")) fail("config: game is required");
        cfg.game = parse_game(j.at("game"));
        const std::size_t d = cfg.game.dim();

        if (!j.contains("methods") || !j.at("methods").is_array() || j.at("methods").empty())
            fail("config: methods must be a non-empty array");
        std::set<std::string> labels;
        for (const auto& m : j.at("methods")) {
            MethodEntry e = parse_method(m, d);
            if (!labels.insert(e.label).second)
                fail("config: duplicate method label '" + e.label + "'");
            cfg.methods.push_back(std::move(e));
        }

        if (!j.contains("init")) fail("config: init is required");
        const auto& init = j.at("init");
        const std::string kind = init.value("type", "fixed");
        if (kind == "fixed") {
            cfg.init.kind = InitSpec::Kind::fixed;
            cfg.init.fixed_w = as_vec(init.at("w"), "init.w");
            if (cfg.init.fixed_w.size() != d) fail("config: init.w has wrong dimension");
        } else if (kind == "uniform") {
            cfg.init.kind = InitSpec::Kind::uniform;
            cfg.init.lo = as_vec(init.at("lo"), "init.lo");
            cfg.init.hi = as_vec(init.at("hi"), "init.hi");
            if (cfg.init.lo.size() != d || cfg.init.hi.size() != d)
                fail("config: init bounds have wrong dimension");
            for (std::size_t i = 0; i < d; ++i)
                if (!(cfg.init.lo[i] <= cfg.init.hi[i]))
                    fail("config: init needs lo <= hi");
        } else {
            fail("config: init.type must be 'fixed' or 'uniform'");
        }

        cfg.runs = j.value("runs", std::size_t{1});
        if (cfg.runs < 1) fail("config: runs must be >= 1");
        cfg.seed = j.value("seed", std::uint64_t{0});
        cfg.out_dir = j.value("out_dir", std::string{});
        if (cfg.out_dir.empty()) {
            if (const char* env = std::getenv("AGA_OUT_DIR"))
                cfg.out_dir = std::string(env) + "/" + sanitize(cfg.name);
            else
                cfg.out_dir = "out/" + sanitize(cfg.name);
        }

        if (j.contains("plot")) {
            const auto& p = j.at("plot");
            PlotSpec spec;
            spec.xmin = p.value("xmin", -2.0);
            spec.xmax = p.value("xmax", 2.0);
            spec.ymin = p.value("ymin", -2.0);
            spec.ymax = p.value("ymax", 2.0);
            spec.resolution = p.value("resolution", std::size_t{60});
            spec.mark_every = p.value("mark_every", std::size_t{10});
            if (p.contains("surfaces"))
                for (const auto& s : p.at("surfaces"))
                    spec.surfaces.push_back(s.get<std::string>());
            if (spec.resolution < 2) fail("config: plot.resolution must be >= 2");
            if (!(spec.xmax > spec.xmin) || !(spec.ymax > spec.ymin))
                fail("config: plot grid bounds have zero area");
            cfg.plot = std::move(spec);
        }
    } catch (const json::exception& e) {
        fail(std::string("config: ") + e.what());
    }
    return cfg;
}

std::string csv_header(std::size_t d, std::size_t n) {
    std::string h = "step";
    for (std::size_t i = 0; i < d; ++i) h += ",w_" + std::to_string(i);
    for (std::size_t i = 1; i <= n; ++i) h += ",r_" + std::to_string(i);
    h += ",loss_c,dir_norm,lambda_signed";
    return h;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          std::size_t d, std::size_t n) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << csv_header(d, n) << "\n";
    for (const auto& rec : traj.steps) {
        out << rec.step;
        for (double x : rec.w) out << "," << fmt_double(x);
        for (double r : rec.rewards) out << "," << fmt_double(r);
        out << "," << fmt_double(rec.loss_c) << "," << fmt_double(rec.dir_norm) << ","
            << fmt_double(rec.lambda_signed) << "\n";
    }
}

std::vector<Vec> read_trajectory_points(const std::filesystem::path& path,
                                        std::size_t d) {
    std::ifstream in(path);
    if (!in) fail("cannot open trajectory csv " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("step,", 0) != 0)
        fail("malformed trajectory csv " + path.string() + ": bad header");
    std::vector<Vec> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        Vec w;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= 1 && col <= d) {
                try {
                    w.push_back(std::stod(cell));
                } catch (const std::exception&) {
                    fail("malformed trajectory csv " + path.string() + ": bad number");
                }
            }
            ++col;
        }
        if (w.size() != d) fail("malformed trajectory csv " + path.string() + ": short row");
        points.push_back(std::move(w));
    }
    return points;
}

std::vector<MethodSummary> run_experiment(const ExperimentConfig& cfg, std::size_t jobs) {
    const std::size_t d = cfg.game.dim();
    const std::size_t n = cfg.game.n;
    const std::size_t total = cfg.methods.size() * cfg.runs;
    std::vector<Trajectory> results(total);
    std::vector<std::string> errors(total);

    auto work = [&](std::size_t task) {
        const std::size_t mi = task / cfg.runs;
        const std::size_t run = task % cfg.runs;
        try {
            results[task] =
                descend(cfg.game, initial_point(cfg, run), cfg.methods[mi].cfg);
        } catch (const std::exception& e) {
            errors[task] = "method " + cfg.methods[mi].label + " run " +
                           std::to_string(run) + ": " + e.what();
        }
    };

    if (jobs <= 1) {
        for (std::size_t t = 0; t < total; ++t) work(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < total; t = next.fetch_add(1))
                    work(t);
            });
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (!e.empty()) throw EvalError(e);

    std::filesystem::create_directories(cfg.out_dir);
    std::vector<MethodSummary> summaries;
    json jsum;
    jsum["name"] = cfg.name;
    jsum["seed"] = cfg.seed;
    jsum["runs"] = cfg.runs;
    jsum["methods"] = json::array();

    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        MethodSummary sum;
        sum.label = cfg.methods[mi].label;
        std::vector<Vec> reward_cols(n);
        Vec sws, eqs, steps;
        bool eq_ok = true;
        for (std::size_t run = 0; run < cfg.runs; ++run) {
            const Trajectory& traj = results[mi * cfg.runs + run];
            const StepRecord& last = traj.steps.back();
            write_trajectory_csv(std::filesystem::path(cfg.out_dir) /
                                     (sanitize(sum.label) + "_run" + std::to_string(run) +
                                      ".csv"),
                                 traj, d, n);
            for (std::size_t i = 0; i < n; ++i) reward_cols[i].push_back(last.rewards[i]);
            sws.push_back(social_welfare(last.rewards));
            try {
                eqs.push_back(equality(last.rewards).equality);
            } catch (const std::invalid_argument&) {
                eq_ok = false;
            }
            steps.push_back(static_cast<double>(last.step));
            sum.final_w.push_back(last.w);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Stats s = mean_std(reward_cols[i]);
            sum.mean_rewards.push_back(s.mean);
            sum.std_rewards.push_back(s.stddev);
        }
        const Stats ssw = mean_std(sws), sst = mean_std(steps);
        sum.mean_sw = ssw.mean;
        sum.std_sw = ssw.stddev;
        if (eq_ok) {
            const Stats se = mean_std(eqs);
            sum.mean_eq = se.mean;
            sum.std_eq = se.stddev;
        } else {
            sum.mean_eq = sum.std_eq = std::nan("");
        }
        sum.mean_steps = sst.mean;
        sum.std_steps = sst.stddev;

        json jm;
        jm["method"] = sum.label;
        jm["mean_rewards"] = sum.mean_rewards;
        jm["std_rewards"] = sum.std_rewards;
        jm["mean_social_welfare"] = sum.mean_sw;
        jm["std_social_welfare"] = sum.std_sw;
        jm["mean_equality"] = sum.mean_eq;
        jm["std_equality"] = sum.std_eq;
        jm["mean_steps"] = sum.mean_steps;
        jm["std_steps"] = sum.std_steps;
        jm["final_w"] = sum.final_w;
        jsum["methods"].push_back(std::move(jm));
        summaries.push_back(std::move(sum));
    }

    std::ofstream out(std::filesystem::path(cfg.out_dir) / "summary.json",
                      std::ios::binary);
    out << jsum.dump(2) << "\n";
    return summaries;
}

std::vector<std::filesystem::path> plot_experiment(const ExperimentConfig& cfg) {
    if (!cfg.plot) fail("config: plot section is required for plotting");
    if (cfg.game.dim() != 2) fail("plot: only 2-dimensional games can be plotted");
    const PlotSpec& spec = *cfg.plot;
    std::vector<std::string> surfaces = spec.surfaces;
    if (surfaces.empty()) surfaces.push_back("collective");

    static const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c",
                                     "#9467bd", "#ff7f0e", "#8c564b"};

    std::vector<SvgSeries> series;
    for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        SvgSeries s;
        s.label = cfg.methods[mi].label;
        s.color = kPalette[mi % 6];
        const auto csv = std::filesystem::path(cfg.out_dir) /
                         (sanitize(s.label) + "_run0.csv");
        for (const Vec& w : read_trajectory_points(csv, 2))
            s.points.push_back({w[0], w[1]});
        series.push_back(std::move(s));
    }

    std::vector<std::filesystem::path> written;
    for (const std::string& surface : surfaces) {
        std::size_t player = 0;  // 0 means collective
        if (surface != "collective") {
            if (surface.rfind("player", 0) != 0)
                fail("plot: surface must be 'collective' or 'player<i>'");
            player = std::stoul(surface.substr(6));
            if (player < 1 || player > cfg.game.n) fail("plot: no such player " + surface);
        }

        ContourGrid grid{spec.xmin, spec.xmax, spec.ymin, spec.ymax, spec.resolution, {}};
        grid.values.resize(spec.resolution * spec.resolution);
        for (std::size_t j = 0; j < spec.resolution; ++j) {
            for (std::size_t i = 0; i < spec.resolution; ++i) {
                const double x = spec.xmin + (i + 0.5) / spec.resolution *
                                                 (spec.xmax - spec.xmin);
                const double y = spec.ymin + (j + 0.5) / spec.resolution *
                                                 (spec.ymax - spec.ymin);
                const Vec w{x, y};
                double value;
                try {
                    value = player == 0 ? -cfg.game.collective.real(w)
                                        : cfg.game.reward(player - 1, w);
                } catch (const std::exception&) {
                    value = std::nan("");
                }
                grid.values[j * spec.resolution + i] = value;
            }
        }

        const std::string title =
            cfg.name + ": " + (player == 0 ? "collective reward" : surface + " reward");
        const auto path = std::filesystem::path(cfg.out_dir) /
                          (sanitize(cfg.name) + "_" + sanitize(surface) + ".svg");
        std::ofstream out(path, std::ios::binary);
        out << render_contour_svg(grid, series, spec.mark_every, title);
        written.push_back(path);
    }
    return written;
}

void print_table(const ExperimentConfig& cfg, std::size_t jobs) {
    if (cfg.game.name != "public_goods" && cfg.game.name != "public_goods_svo")
        fail("table1: config must use the public goods game");
    const auto summaries = run_experiment(cfg, jobs);

    std::printf("%-8s", "");
    for (const auto& s : summaries) std::printf("%12s", s.label.c_str());
    std::printf("\n");
    for (std::size_t i = 0; i < cfg.game.n; ++i) {
        std::printf("r_%-6zu", i + 1);
        for (const auto& s : summaries) std::printf("%12.3f", s.mean_rewards[i]);
        std::printf("\n");
    }
    std::printf("%-8s", "SW");
    for (const auto& s : summaries) std::printf("%12.3f", s.mean_sw);
    std::printf("\n%-8s", "E");
    for (const auto& s : summaries) std::printf("%12.3f", s.mean_eq);
    std::printf("\n");

    json jt;
    jt["name"] = cfg.name;
    jt["methods"] = json::array();
    for (const auto& s : summaries) {
        json jm;
        jm["method"] = s.label;
        jm["rewards"] = s.mean_rewards;
        jm["social_welfare"] = s.mean_sw;
        jm["equality"] = s.mean_eq;
        jt["methods"].push_back(std::move(jm));
    }
    std::ofstream out(std::filesystem::path(cfg.out_dir) / "table.json", std::ios::binary);
    out << jt.dump(2) << "\n";
}

}  // namespace aga
