#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fge/evolution.hpp"
#include "fge/restart.hpp"
#include "fge/tailstats.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fge {

inline constexpr const char* kToolVersion = "0.1.0";

struct ExperimentConfig {
    GEConfig ge;
    std::uint64_t n_seeds = 1;
    std::uint64_t base_seed = 1;
    RestartStrategy strategy;  // NoRestart = plain censored runs
    std::string output_path;
    unsigned parallel_workers = 0;  // 0 = hardware concurrency
    std::uint64_t restart_global_cap = 1'000'000;

    void validate() const;
};

// One dataset row: a RunRecord in no-restart mode, a RestartOutcome plus its
// master seed in strategy mode.
struct StrategyRow {
    std::uint64_t master_seed = 0;
    RestartOutcome outcome;
};

struct RunDataset {
    ExperimentConfig config;
    bool strategy_mode = false;
    std::vector<RunRecord> records;     // no-restart mode
    std::vector<StrategyRow> outcomes;  // strategy mode
    std::string tool_version = kToolVersion;
    std::string rng_algorithm = kRngAlgorithm;

    std::uint64_t rows() const {
        return strategy_mode ? outcomes.size() : records.size();
    }
    // Observed sample (+ censored count) for the statistics; strategy-mode
    // totals count failed outcomes as censored.
    RunSample to_sample() const;
};

// Runs n_seeds independent searches (restart-wrapped when the strategy is not
// NoRestart), streaming rows to config.output_path in seed order. If the file
// already holds a prefix of this experiment, finished rows are skipped.
RunDataset run_experiment(const ExperimentConfig& config);

RunDataset load_dataset(const std::string& path);

// Full tail characterization: counts, summary, kurtosis, Hill-Hall and
// regression alpha per r value, plus plot-ready CSVs (ecdf_<dim>.csv,
// tail_loglog_<dim>.csv, running_mean_<dim>.csv) next to the report.
nlohmann::json analyze(const RunDataset& dataset, std::span<const double> r_fractions,
                       const std::string& output_dir);

struct StrategyResult {
    RestartStrategy strategy;
    std::uint64_t n_seeds = 0;
    double success_rate = 0.0;
    double mean_total = 0.0;
    double median_total = 0.0;
    double mean_restarts_per_success = 0.0;
};

// Runs every strategy over the same master seeds and summarizes costs.
std::vector<StrategyResult> compare_strategies(const ExperimentConfig& config,
                                               std::span<const RestartStrategy> strategies,
                                               std::uint64_t n_seeds);

std::string format_comparison_table(std::span<const StrategyResult> results);
void write_comparison_csv(std::span<const StrategyResult> results, const std::string& path);

// Flat key = value config document mirroring ExperimentConfig field names.
ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig parse_config_text(std::string_view text);

// Shortest round-trip decimal rendering (used everywhere a double reaches a
// file, so reruns are byte-identical).
std::string format_double(double value);

}  // namespace fge
