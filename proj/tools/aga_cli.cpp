// Experiment front end: run descent experiments from JSON configs, render
// SVG contour plots, and print public-goods summary tables.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aga/experiment.hpp"

namespace {

aga::ExperimentConfig load(const std::string& path,
                           const std::optional<std::uint64_t>& seed,
                           const std::string& out_override) {
    aga::ExperimentConfig cfg = aga::load_config(path);
    if (seed) cfg.seed = *seed;
    if (!out_override.empty()) cfg.out_dir = out_override;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"differentiable mixed-motive game experiment runner"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--jobs", jobs, "worker threads for independent runs")
        ->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("config", config_path, "JSON experiment config")->required();
    run->add_option("--out", out_dir, "output directory override");

    auto* plot = app.add_subcommand("plot", "render SVG plots from run output");
    plot->add_option("config", config_path, "JSON experiment config")->required();
    plot->add_option("--out", out_dir, "output directory override");

    auto* table = app.add_subcommand("table1", "print the public-goods summary table");
    table->add_option("config", config_path, "JSON experiment config")->required();
    table->add_option("--out", out_dir, "output directory override");

    CLI11_PARSE(app, argc, argv);

    try {
        const aga::ExperimentConfig cfg = load(config_path, seed, out_dir);
        if (run->parsed()) {
            aga::run_experiment(cfg, jobs);
            std::printf("wrote %s\n", cfg.out_dir.c_str());
        } else if (plot->parsed()) {
            for (const auto& f : aga::plot_experiment(cfg))
                std::printf("wrote %s\n", f.string().c_str());
        } else if (table->parsed()) {
            aga::print_table(cfg, jobs);
        }
    } catch (const aga::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
