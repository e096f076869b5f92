#include "lse/gp/model.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "lse/error.hpp"

namespace lse::gp {
namespace {

// Plain sequential dot product: its rounding does not depend on alignment,
// so identical inputs give bitwise identical results on every code path.
inline double dot_sequential(const double* a, const double* b, Eigen::Index n) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

struct GpModel::State {
  Bounds bounds;
  Matrix inducing;         // unit coordinates
  Matrix inducing_scaled;  // divided by lengthscales
  KernelParams kernel;
  Vector mean;
  Matrix chol;
  Matrix kzz_chol;
  Matrix s_minus_i;
  std::optional<Dataset> data;
  FitDiagnostics diagnostics;
  double jitter = 0.0;
};

GpModel::GpModel(Bounds bounds, Matrix inducing_unit, KernelParams kernel, Vector variational_mean,
                 Matrix variational_chol, std::optional<Dataset> data, FitDiagnostics diagnostics,
                 double base_jitter, double max_jitter) {
  kernel.validate();
  const Eigen::Index m = inducing_unit.rows();
  if (m == 0 || inducing_unit.cols() != static_cast<Eigen::Index>(bounds.dim()) ||
      kernel.lengthscales.size() != inducing_unit.cols()) {
    throw DomainError("gp model: inducing points / kernel dimension mismatch");
  }
  if (variational_mean.size() != m || variational_chol.rows() != m ||
      variational_chol.cols() != m) {
    throw DomainError("gp model: variational parameters have the wrong shape");
  }
  auto state = std::make_shared<State>();
  state->bounds = std::move(bounds);
  state->inducing = std::move(inducing_unit);
  state->inducing_scaled =
      state->inducing * kernel.lengthscales.array().inverse().matrix().asDiagonal();
  state->kernel = std::move(kernel);
  state->mean = std::move(variational_mean);
  state->chol = variational_chol.triangularView<Eigen::Lower>();
  state->data = std::move(data);

  const Matrix kzz = rbf_matrix(state->kernel, state->inducing, state->inducing);
  double jitter = base_jitter;
  for (;;) {
    Eigen::LLT<Matrix> llt(kzz + jitter * Matrix::Identity(m, m));
    if (llt.info() == Eigen::Success) {
      state->kzz_chol = llt.matrixL();
      break;
    }
    jitter *= 10.0;
    if (jitter > max_jitter * (1.0 + 1e-9)) {
      throw NumericError("gp model: inducing covariance not positive definite up to max jitter");
    }
  }
  state->jitter = jitter;
  state->s_minus_i = state->chol * state->chol.transpose() - Matrix::Identity(m, m);
  diagnostics.jitter = jitter;
  state->diagnostics = std::move(diagnostics);
  state_ = std::move(state);
}

GpModel GpModel::prior(Bounds bounds, Matrix inducing_unit, KernelParams kernel) {
  const Eigen::Index m = inducing_unit.rows();
  return GpModel(std::move(bounds), std::move(inducing_unit), std::move(kernel), Vector::Zero(m),
                 Matrix::Identity(m, m));
}

const Bounds& GpModel::bounds() const { return state_->bounds; }
Eigen::Index GpModel::num_inducing() const { return state_->inducing.rows(); }
const Matrix& GpModel::inducing_unit() const { return state_->inducing; }
const KernelParams& GpModel::kernel() const { return state_->kernel; }
const Vector& GpModel::variational_mean() const { return state_->mean; }
const Matrix& GpModel::variational_chol() const { return state_->chol; }
Matrix GpModel::variational_covariance() const { return state_->chol * state_->chol.transpose(); }
const std::optional<Dataset>& GpModel::data() const { return state_->data; }
const FitDiagnostics& GpModel::diagnostics() const { return state_->diagnostics; }
double GpModel::jitter() const { return state_->jitter; }

Vector GpModel::whiten(const Vector& unit_point) const {
  const State& s = *state_;
  const Vector scaled = (unit_point.array() / s.kernel.lengthscales.array()).matrix();
  const Eigen::Index m = s.inducing_scaled.rows();
  Vector k(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    k[a] = s.kernel.outputscale *
           std::exp(-0.5 * (s.inducing_scaled.row(a).transpose() - scaled).squaredNorm());
  }
  s.kzz_chol.triangularView<Eigen::Lower>().solveInPlace(k);
  return k;
}

double GpModel::prior_cov_unit(const Vector& u, const Vector& v) const {
  return rbf(state_->kernel, u, v);
}

LatentMarginals GpModel::marginals(const Matrix& points) const {
  const State& s = *state_;
  Matrix unit(points.rows(), points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const Vector x = points.row(i).transpose();
    s.bounds.check(x);
    unit.row(i) = s.bounds.to_unit(x).transpose();
  }
  Matrix a = rbf_matrix(s.kernel, s.inducing, unit);
  s.kzz_chol.triangularView<Eigen::Lower>().solveInPlace(a);
  const Matrix ct_a = s.chol.transpose().triangularView<Eigen::Upper>() * a;
  LatentMarginals out;
  out.mean = a.transpose() * s.mean;
  out.var = (s.kernel.outputscale - a.colwise().squaredNorm().array() +
             ct_a.colwise().squaredNorm().array())
                .max(0.0)
                .matrix()
                .transpose();
  return out;
}

double GpModel::covariance(const Vector& x, const Vector& y) const {
  const State& s = *state_;
  s.bounds.check(x);
  s.bounds.check(y);
  const Vector ux = s.bounds.to_unit(x);
  const Vector uy = s.bounds.to_unit(y);
  const Vector ax = whiten(ux);
  const Vector ay = whiten(uy);
  const Vector bx = s.s_minus_i * ax;
  return prior_cov_unit(ux, uy) + dot_sequential(bx.data(), ay.data(), ax.size());
}

QueryCache GpModel::cache(const Matrix& query_points) const {
  const State& s = *state_;
  QueryCache c(*this);
  const Eigen::Index nq = query_points.rows();
  const Eigen::Index m = num_inducing();
  c.scaled_queries_.resize(nq, static_cast<Eigen::Index>(s.bounds.dim()));
  c.projected_.resize(m, nq);
  c.mu_q_.resize(nq);
  c.var_q_.resize(nq);
  for (Eigen::Index q = 0; q < nq; ++q) {
    const Vector x = query_points.row(q).transpose();
    s.bounds.check(x);
    const Vector u = s.bounds.to_unit(x);
    c.scaled_queries_.row(q) = (u.array() / s.kernel.lengthscales.array()).matrix().transpose();
    const Vector a = whiten(u);
    const Vector b = s.s_minus_i * a;
    c.projected_.col(q) = b;
    c.mu_q_[q] = dot_sequential(a.data(), s.mean.data(), m);
    c.var_q_[q] = std::max(0.0, s.kernel.outputscale + dot_sequential(b.data(), a.data(), m));
  }
  return c;
}

PosteriorQuery GpModel::posterior(const Matrix& query_points, const Vector& candidate) const {
  return cache(query_points).evaluate(candidate);
}

std::pair<double, double> QueryCache::candidate_marginal(const Vector& candidate) const {
  const auto& s = *model_.state_;
  s.bounds.check(candidate);
  const Vector a = model_.whiten(s.bounds.to_unit(candidate));
  const Vector b = s.s_minus_i * a;
  const Eigen::Index m = a.size();
  return {dot_sequential(a.data(), s.mean.data(), m),
          std::max(0.0, s.kernel.outputscale + dot_sequential(b.data(), a.data(), m))};
}

void QueryCache::evaluate(const Vector& candidate, PosteriorQuery& out) const {
  const auto& s = *model_.state_;
  s.bounds.check(candidate);
  const Vector u = s.bounds.to_unit(candidate);
  const Vector a = model_.whiten(u);
  const Vector b = s.s_minus_i * a;
  const Eigen::Index m = a.size();
  out.mu_star = dot_sequential(a.data(), s.mean.data(), m);
  out.var_star = std::max(0.0, s.kernel.outputscale + dot_sequential(b.data(), a.data(), m));

  const Eigen::Index nq = size();
  out.mu_q = mu_q_;
  out.var_q = var_q_;
  out.cov_qstar.resize(nq);
  const Vector scaled = (u.array() / s.kernel.lengthscales.array()).matrix();
  const Eigen::Index d = scaled.size();
  for (Eigen::Index q = 0; q < nq; ++q) {
    double r2 = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double diff = scaled_queries_(q, j) - scaled[j];
      r2 += diff * diff;
    }
    out.cov_qstar[q] =
        s.kernel.outputscale * std::exp(-0.5 * r2) + dot_sequential(projected_.col(q).data(), a.data(), m);
  }
}

PosteriorQuery QueryCache::evaluate(const Vector& candidate) const {
  PosteriorQuery out;
  evaluate(candidate, out);
  return out;
}

}  // namespace lse::gp
