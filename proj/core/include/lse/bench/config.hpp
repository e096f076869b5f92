#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lse/acquisition.hpp"
#include "lse/gp/fit.hpp"
#include "lse/optim/maximize.hpp"

namespace lse::bench {

inline constexpr int kSchemaVersion = 1;

/// Everything that determines a benchmark run. Stored as JSON with a
/// `schema_version` key; unknown keys are rejected.
struct ExperimentConfig {
  std::string problem = "discrim_lowdim";
  std::string acquisition = "GlobalMI";
  std::optional<double> beta;
  /// Defaults to the problem's target threshold.
  std::optional<double> theta;
  int total_iterations = 150;
  int initial_design_size = 10;
  int reference_set_size = 500;
  int test_set_size = 1000;
  int replications = 20;
  std::uint64_t seed = 0;
  /// From-scratch refit period, in active iterations.
  int refit_every = 10;
  std::string output_dir = "results";
  int workers = 1;
  gp::SurrogateConfig surrogate;
  optim::MaximizeBudget optimizer;

  /// Throws ConfigError.
  void validate() const;
  double resolved_theta() const;
  acq::AcquisitionKind kind() const;
};

/// Throws ConfigError on malformed JSON, a missing or unsupported
/// schema_version, unknown keys, wrong types, or invalid values.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_json(const ExperimentConfig& config);

}  // namespace lse::bench
