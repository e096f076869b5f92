#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "lse/bench/aggregate.hpp"
#include "lse/bench/config.hpp"

namespace lse::bench {

struct RunSummary {
  std::filesystem::path directory;
  Aggregate aggregate;
  int completed = 0;
  int failed = 0;
};

/// Runs replications 0..N-1 on up to `workers` threads and writes into
/// config.output_dir: config.json, rep_XXX.csv and model_XXX.json per
/// replication, aggregate.csv, plot_brier.csv, plot_class_error.csv and
/// summary.json. Overrides replace the config's values. Progress lines go
/// to `log` when given.
RunSummary run_benchmark(ExperimentConfig config, std::optional<int> replications = std::nullopt,
                         std::optional<int> workers = std::nullopt, std::ostream* log = nullptr);

/// Re-reads config.json and rep_*.csv from a run directory and rewrites
/// the aggregate outputs. Throws ConfigError if the directory is not a run.
Aggregate aggregate_directory(const std::filesystem::path& directory);

}  // namespace lse::bench
