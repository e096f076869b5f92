#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lse/bench/experiment.hpp"

namespace lse::bench {

/// Mean and two standard errors (sample standard deviation, n - 1). The
/// standard error is 0 for a single value. Values are summed in sorted
/// order, so the result does not depend on their order.
struct MetricSummary {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double two_sem = std::numeric_limits<double>::quiet_NaN();
  int n = 0;
};

MetricSummary summarize(std::vector<double> values);

struct AggregateRow {
  int iteration = 0;
  MetricSummary brier;
  MetricSummary class_error;
};

struct Aggregate {
  std::vector<AggregateRow> rows;
  /// Final-iteration metrics and edge rate over the replications that completed.
  MetricSummary final_brier;
  MetricSummary final_class_error;
  MetricSummary edge_rate;
  int replications = 0;
  int failed = 0;
};

/// Per-iteration statistics over every trace that scored that iteration.
Aggregate aggregate(const std::vector<RunTrace>& traces);

/// iteration, n, brier_mean, brier_two_sem, class_error_mean, class_error_two_sem
void write_aggregate_csv(const Aggregate& agg, std::ostream& out);
/// iteration, mean, two_sem for one metric ("brier" or "class_error").
void write_plot_data(const Aggregate& agg, const std::string& metric, std::ostream& out);
std::string summary_json(const Aggregate& agg);

}  // namespace lse::bench
