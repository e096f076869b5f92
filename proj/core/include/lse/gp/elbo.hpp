#pragma once

#include "lse/gp/dataset.hpp"
#include "lse/gp/fit.hpp"
#include "lse/gp/model.hpp"

namespace lse::gp {

/// Probit sparse-variational ELBO plus log hyperprior, as a function of a flat
/// parameter vector
///   [ variational mean (m) | packed lower Cholesky, log diagonal (m(m+1)/2)
///     | log lengthscales (d) | log outputscale ].
/// Exposed for gradient checks; `fit` is the normal entry point.
class ElboObjective {
 public:
  ElboObjective(const Dataset& data, Matrix inducing_unit, const SurrogateConfig& config);

  Eigen::Index num_parameters() const;
  Eigen::Index num_inducing() const { return inducing_.rows(); }

  /// Returns NaN if K_zz cannot be factorized within the jitter limit.
  double value(const Vector& params, Vector* gradient = nullptr) const;
  /// Jitter the last successful evaluation needed.
  double last_jitter() const { return last_jitter_; }

  Vector initial_parameters() const;
  Vector pack(const GpModel& model) const;
  GpModel unpack(const Vector& params, FitDiagnostics diagnostics) const;

 private:
  const Dataset& data_;
  Matrix inducing_;
  SurrogateConfig config_;
  Matrix x_unit_;
  Vector signs_;
  mutable double last_jitter_ = 0.0;
};

}  // namespace lse::gp
