#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "lse/gp/dataset.hpp"
#include "lse/gp/kernel.hpp"
#include "lse/posterior_query.hpp"
#include "lse/types.hpp"

namespace lse::gp {

struct FitDiagnostics {
  double elbo = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  double jitter = 0.0;
  bool from_scratch = true;
  std::string termination;
};

struct LatentMarginals {
  Vector mean;
  Vector var;
};

class QueryCache;

/// Sparse variational probit GP in whitened form: u = L v with
/// K_zz + jitter I = L L^T and q(v) = N(mean, C C^T). Inputs are mapped to the
/// unit cube before the kernel is applied. Immutable after construction, so
/// posterior queries may run concurrently.
class GpModel {
 public:
  /// `inducing_unit` holds inducing locations in unit-cube coordinates, one
  /// per row. Throws NumericError if K_zz cannot be factorized with jitter
  /// up to `max_jitter`.
  GpModel(Bounds bounds, Matrix inducing_unit, KernelParams kernel, Vector variational_mean,
          Matrix variational_chol, std::optional<Dataset> data = std::nullopt,
          FitDiagnostics diagnostics = {}, double base_jitter = 1e-6, double max_jitter = 1e-2);

  /// Untrained model: q(v) equals the whitened prior N(0, I).
  static GpModel prior(Bounds bounds, Matrix inducing_unit, KernelParams kernel);

  const Bounds& bounds() const;
  std::size_t dim() const { return bounds().dim(); }
  Eigen::Index num_inducing() const;
  const Matrix& inducing_unit() const;
  const KernelParams& kernel() const;
  const Vector& variational_mean() const;
  /// Lower-triangular Cholesky factor of the whitened variational covariance.
  const Matrix& variational_chol() const;
  Matrix variational_covariance() const;
  const std::optional<Dataset>& data() const;
  const FitDiagnostics& diagnostics() const;
  double jitter() const;

  /// Latent mean and variance at each row of `points` (original coordinates).
  LatentMarginals marginals(const Matrix& points) const;

  /// Full joint summary for a query set against one candidate point.
  /// Throws DomainError for points outside the bounds.
  PosteriorQuery posterior(const Matrix& query_points, const Vector& candidate) const;

  /// Precomputes everything that depends only on the query set, so repeated
  /// candidate evaluations cost O(|Q| m + m^2).
  QueryCache cache(const Matrix& query_points) const;

  /// Cov[f(x), f(y)] for two single points.
  double covariance(const Vector& x, const Vector& y) const;

 private:
  friend class QueryCache;
  struct State;

  // L^{-1} k_Z(u) for a unit-cube point.
  Vector whiten(const Vector& unit_point) const;
  double prior_cov_unit(const Vector& u, const Vector& v) const;

  std::shared_ptr<const State> state_;
};

class QueryCache {
 public:
  Eigen::Index size() const { return mu_q_.size(); }
  const Vector& mu_q() const { return mu_q_; }
  const Vector& var_q() const { return var_q_; }

  /// Fills `out` for candidate x* (original coordinates), reusing its storage.
  void evaluate(const Vector& candidate, PosteriorQuery& out) const;
  PosteriorQuery evaluate(const Vector& candidate) const;

  /// Latent mean / variance at a candidate only.
  std::pair<double, double> candidate_marginal(const Vector& candidate) const;

 private:
  friend class GpModel;
  explicit QueryCache(GpModel model) : model_(std::move(model)) {}

  GpModel model_;
  Matrix scaled_queries_;  // unit coordinates divided by lengthscales, |Q| x d
  Matrix projected_;       // column q holds (S - I) a_q, m x |Q|
  Vector mu_q_;
  Vector var_q_;
};

}  // namespace lse::gp
