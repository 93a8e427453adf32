#pragma once

// Config-driven experiment runner: deterministic multi-run descent over the
// built-in games, CSV trajectories, JSON summaries, SVG contour plots.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aga/adjust.hpp"
#include "aga/game.hpp"

namespace aga {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InitSpec {
    enum class Kind { fixed, uniform } kind = Kind::fixed;
    Vec fixed_w;   // kind == fixed
    Vec lo, hi;    // kind == uniform
};

struct PlotSpec {
    double xmin = -2, xmax = 2, ymin = -2, ymax = 2;
    std::size_t resolution = 60;               // grid cells per axis
    std::vector<std::string> surfaces;         // "collective" or "player<i>"
    std::size_t mark_every = 10;               // step-marker spacing
};

struct MethodEntry {
    std::string label;  // unique; defaults to the method name
    MethodConfig cfg;
};

struct ExperimentConfig {
    std::string name;
    GameDefinition game;
    std::vector<MethodEntry> methods;
    InitSpec init;
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::optional<PlotSpec> plot;
};

// Parse and validate a JSON experiment config. The seed and output directory
// can be overridden by the caller (CLI flags / environment).
ExperimentConfig load_config(const std::filesystem::path& path);

struct MethodSummary {
    std::string label;
    Vec mean_rewards, std_rewards;
    double mean_sw = 0, std_sw = 0;
    double mean_eq = 0, std_eq = 0;   // NaN when equality is undefined
    double mean_steps = 0, std_steps = 0;
    std::vector<Vec> final_w;         // one point per run
};

// Runs every method x run, writes one CSV per trajectory plus summary.json.
// Run substreams are derived as seed xor run-index, so outputs are identical
// for any job count.
std::vector<MethodSummary> run_experiment(const ExperimentConfig& cfg,
                                          std::size_t jobs = 1);

// CSV helpers (schema: step,w_0..,r_1..,loss_c,dir_norm,lambda_signed).
std::string csv_header(std::size_t d, std::size_t n);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          std::size_t d, std::size_t n);
std::vector<Vec> read_trajectory_points(const std::filesystem::path& path,
                                        std::size_t d);

// Renders the configured surfaces as self-contained SVGs from the trajectory
// CSVs produced by run_experiment. Returns the files written.
std::vector<std::filesystem::path> plot_experiment(const ExperimentConfig& cfg);

// Prints a per-method table of mean r_1..r_n, SW and E to stdout and writes
// the same data as <out_dir>/table.json. Requires a public goods game.
void print_table(const ExperimentConfig& cfg, std::size_t jobs = 1);

}  // namespace aga
