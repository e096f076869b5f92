#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lse/bench/config.hpp"
#include "lse/gp/model.hpp"

namespace lse::bench {

/// One sampled point. Metrics are NaN before the initial design is complete.
struct IterationRecord {
  int iteration = 0;
  bool active = false;
  Vector point;
  int outcome = 0;
  double brier = std::numeric_limits<double>::quiet_NaN();
  double class_error = std::numeric_limits<double>::quiet_NaN();
  bool edge = false;
  double fit_seconds = 0.0;
  double acquisition_seconds = 0.0;
  double acquisition_value = std::numeric_limits<double>::quiet_NaN();

  bool has_metrics() const { return !std::isnan(brier); }
};

struct RunTrace {
  int replication = 0;
  Bounds bounds;
  std::vector<IterationRecord> records;
  bool failed = false;
  /// Iteration at which the run stopped and why, when failed.
  int error_iteration = 0;
  std::string error;
  std::optional<gp::GpModel> final_model;

  /// Active-sampling points, one per row.
  Matrix active_points() const;
  double edge_rate() const;
  /// Metrics of the last record that has them.
  const IterationRecord* last_scored() const;
};

/// Initial Sobol design, then select / sample / refit / score until
/// total_iterations observations. Every random choice comes from a stream
/// derived from (seed, replication), so the trace is reproducible. A
/// numerical failure truncates the trace and marks it failed.
RunTrace run_experiment(const ExperimentConfig& config, int replication);

}  // namespace lse::bench
