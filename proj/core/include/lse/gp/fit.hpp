#pragma once

#include <random>

#include "lse/error.hpp"
#include "lse/gp/dataset.hpp"
#include "lse/gp/model.hpp"

namespace lse::gp {

/// Lognormal hyperpriors on the kernel, expressed as medians and log-scale
/// standard deviations. Lengthscales are in unit-cube coordinates, so a
/// median of 0.25 means a quarter of each axis' range.
struct Hyperprior {
  double lengthscale_median = 0.25;
  double lengthscale_log_sd = 1.0;
  double outputscale_median = 4.0;
  double outputscale_log_sd = 1.0;
};

struct SurrogateConfig {
  int max_inducing = 100;
  int max_iterations = 500;
  /// Stop once |delta ELBO| / |ELBO| falls below this.
  double relative_tolerance = 1e-5;
  int kmeans_restarts = 10;
  int kmeans_max_iterations = 100;
  int quadrature_nodes = 20;
  double base_jitter = 1e-6;
  double max_jitter = 1e-2;
  Hyperprior prior;

  /// Throws ConfigError on nonsensical settings.
  void validate() const;
};

enum class RefitMode { kWarm, kFromScratch };

/// From scratch on every `period`-th active iteration, warm otherwise.
RefitMode refit_policy(int iteration, int period = 10);

class FitError : public NumericError {
 public:
  FitError(const std::string& what, FitDiagnostics diagnostics)
      : NumericError(what), diagnostics_(std::move(diagnostics)) {}
  const FitDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  FitDiagnostics diagnostics_;
};

/// Maximizes the probit ELBO over the whitened variational distribution and
/// the kernel hyperparameters. Without `warm_start`, inducing points are
/// k-means centers of the observations (at most min(max_inducing, n)) and
/// optimization starts from the prior; with it, inducing points and all
/// parameters are taken from the previous model. The result never has a
/// lower ELBO than its starting point.
GpModel fit(const Dataset& data, const SurrogateConfig& config, std::mt19937_64& rng,
            const GpModel* warm_start = nullptr);

/// ELBO of an existing model's variational state on `data`.
double evaluate_elbo(const GpModel& model, const Dataset& data, const SurrogateConfig& config);

}  // namespace lse::gp
