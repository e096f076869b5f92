#include "lse/gp/elbo.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Cholesky>

#include "lse/quadrature.hpp"
#include "lse/specfun.hpp"

namespace lse::gp {
namespace {

constexpr double kVarianceFloor = 1e-12;

double log_normal_density(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

// sum_{a,b} w_ab (p_a - q_b)^2 without forming the differences.
double weighted_sq_diff(const Matrix& w, const Vector& p, const Vector& q) {
  return p.array().square().matrix().dot(w.rowwise().sum()) +
         q.array().square().matrix().dot(w.colwise().sum().transpose()) - 2.0 * p.dot(w * q);
}

}  // namespace

ElboObjective::ElboObjective(const Dataset& data, Matrix inducing_unit, const SurrogateConfig& config)
    : data_(data), inducing_(std::move(inducing_unit)), config_(config) {
  const auto n = static_cast<Eigen::Index>(data.size());
  x_unit_.resize(n, static_cast<Eigen::Index>(data.dim()));
  signs_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x_unit_.row(i) = data.bounds().to_unit(data.points().row(i).transpose()).transpose();
    signs_[i] = data.outcomes()[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
  }
}

Eigen::Index ElboObjective::num_parameters() const {
  const Eigen::Index m = inducing_.rows();
  return m + m * (m + 1) / 2 + inducing_.cols() + 1;
}

Vector ElboObjective::initial_parameters() const {
  const Eigen::Index m = inducing_.rows();
  const Eigen::Index d = inducing_.cols();
  Vector p = Vector::Zero(num_parameters());
  const Eigen::Index off = m + m * (m + 1) / 2;
  p.segment(off, d).setConstant(std::log(config_.prior.lengthscale_median));
  p[off + d] = std::log(config_.prior.outputscale_median);
  return p;
}

Vector ElboObjective::pack(const GpModel& model) const {
  const Eigen::Index m = inducing_.rows();
  const Eigen::Index d = inducing_.cols();
  Vector p(num_parameters());
  p.head(m) = model.variational_mean();
  Eigen::Index idx = m;
  const Matrix& c = model.variational_chol();
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j; i < m; ++i) p[idx++] = (i == j) ? std::log(std::abs(c(i, j))) : c(i, j);
  }
  p.segment(idx, d) = model.kernel().lengthscales.array().log().matrix();
  p[idx + d] = std::log(model.kernel().outputscale);
  return p;
}

GpModel ElboObjective::unpack(const Vector& params, FitDiagnostics diagnostics) const {
  const Eigen::Index m = inducing_.rows();
  const Eigen::Index d = inducing_.cols();
  Matrix c = Matrix::Zero(m, m);
  Eigen::Index idx = m;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j; i < m; ++i) {
      c(i, j) = (i == j) ? std::exp(params[idx]) : params[idx];
      ++idx;
    }
  }
  KernelParams kernel{params.segment(idx, d).array().exp().matrix(), std::exp(params[idx + d])};
  return GpModel(data_.bounds(), inducing_, std::move(kernel), params.head(m), std::move(c), data_,
                 std::move(diagnostics), config_.base_jitter, config_.max_jitter);
}

double ElboObjective::value(const Vector& params, Vector* gradient) const {
  const Eigen::Index m = inducing_.rows();
  const Eigen::Index d = inducing_.cols();
  const Eigen::Index n = x_unit_.rows();

  // Unpack.
  const Vector mean = params.head(m);
  Matrix c = Matrix::Zero(m, m);
  Eigen::Index idx = m;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j; i < m; ++i) {
      c(i, j) = (i == j) ? std::exp(params[idx]) : params[idx];
      ++idx;
    }
  }
  const Eigen::Index hyper_off = idx;
  const Vector log_l = params.segment(hyper_off, d);
  const double log_s = params[hyper_off + d];
  if (!log_l.allFinite() || !std::isfinite(log_s) || !mean.allFinite() || !c.allFinite()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const Vector inv_l = (-log_l).array().exp().matrix();
  const double s = std::exp(log_s);

  const Matrix zs = inducing_ * inv_l.asDiagonal();
  const Matrix xs = x_unit_ * inv_l.asDiagonal();
  Matrix kzz(m, m);
  for (Eigen::Index b = 0; b < m; ++b) {
    for (Eigen::Index a = 0; a < m; ++a) kzz(a, b) = s * std::exp(-0.5 * (zs.row(a) - zs.row(b)).squaredNorm());
  }
  Matrix kzx(m, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index a = 0; a < m; ++a) kzx(a, i) = s * std::exp(-0.5 * (zs.row(a) - xs.row(i)).squaredNorm());
  }

  Eigen::LLT<Matrix> llt;
  double jitter = config_.base_jitter;
  for (;;) {
    llt.compute(kzz + jitter * Matrix::Identity(m, m));
    if (llt.info() == Eigen::Success) break;
    jitter *= 10.0;
    if (jitter > config_.max_jitter * (1.0 + 1e-9)) return std::numeric_limits<double>::quiet_NaN();
  }
  last_jitter_ = jitter;
  const Matrix l = llt.matrixL();
  const auto l_tri = l.triangularView<Eigen::Lower>();

  Matrix a = kzx;
  l_tri.solveInPlace(a);
  const Matrix ct_a = c.transpose().triangularView<Eigen::Upper>() * a;
  const Vector mu = a.transpose() * mean;
  const Vector var = (s - a.colwise().squaredNorm().array() + ct_a.colwise().squaredNorm().array())
                         .matrix()
                         .transpose();

  const GaussHermiteRule& gh = gauss_hermite(config_.quadrature_nodes);
  const auto nodes = static_cast<Eigen::Index>(gh.nodes.size());
  Vector g(n);
  Vector h(n);
  double expected_loglik = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sgn = signs_[i];
    const bool floored = !(var[i] > kVarianceFloor);
    const double sd = std::sqrt(floored ? kVarianceFloor : var[i]);
    double e = 0.0;
    double gi = 0.0;
    double hi = 0.0;
    for (Eigen::Index k = 0; k < nodes; ++k) {
      const double w = gh.weights[static_cast<std::size_t>(k)];
      const double t = gh.nodes[static_cast<std::size_t>(k)];
      const double arg = sgn * (mu[i] + sd * t);
      e += w * specfun::log_normal_cdf(arg);
      const double lam = sgn * specfun::inverse_mills(arg);
      gi += w * lam;
      hi += w * lam * t;
    }
    expected_loglik += e;
    g[i] = gi;
    h[i] = floored ? 0.0 : hi / (2.0 * sd);
  }

  double log_det_s = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) log_det_s += 2.0 * std::log(c(i, i));
  const double kl =
      0.5 * (c.squaredNorm() + mean.squaredNorm() - static_cast<double>(m) - log_det_s);

  const auto& pr = config_.prior;
  double log_prior = log_normal_density(log_s, std::log(pr.outputscale_median), pr.outputscale_log_sd);
  for (Eigen::Index j = 0; j < d; ++j) {
    log_prior += log_normal_density(log_l[j], std::log(pr.lengthscale_median), pr.lengthscale_log_sd);
  }

  const double elbo = expected_loglik - kl + log_prior;
  if (!std::isfinite(elbo)) return std::numeric_limits<double>::quiet_NaN();
  if (gradient == nullptr) return elbo;

  Vector& grad = *gradient;
  grad.resize(num_parameters());

  // Variational mean.
  grad.head(m) = a * g - mean;

  // Variational Cholesky factor: d/dC of sum_i h_i a_i^T C C^T a_i - KL.
  const Matrix ah = a * h.asDiagonal();
  const Matrix mh = ah * a.transpose();
  Matrix gc = 2.0 * mh * c - c;
  idx = m;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j; i < m; ++i) {
      grad[idx++] = (i == j) ? (gc(i, i) + 1.0 / c(i, i)) * c(i, i) : gc(i, j);
    }
  }

  // Hyperparameters: backpropagate through A = L^{-1} K_zx and L = chol(K_zz).
  const Matrix gbar = mean * g.transpose() + 2.0 * (c * ct_a - a) * h.asDiagonal();
  Matrix kbar_zx = gbar;
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(kbar_zx);
  const Matrix lbar = -(kbar_zx * a.transpose()).triangularView<Eigen::Lower>().toDenseMatrix();
  Matrix p = (l.transpose() * lbar).triangularView<Eigen::Lower>();
  p.diagonal() *= 0.5;
  Matrix kbar_zz = 0.5 * (p + p.transpose());
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(kbar_zz);  // L^{-T} P
  kbar_zz.transposeInPlace();
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(kbar_zz);  // (P L^{-1})^T ... symmetric
  const Matrix wzz = kbar_zz.cwiseProduct(kzz);
  const Matrix wzx = kbar_zx.cwiseProduct(kzx);

  for (Eigen::Index j = 0; j < d; ++j) {
    const Vector zj = zs.col(j);
    const Vector xj = xs.col(j);
    grad[hyper_off + j] = weighted_sq_diff(wzz, zj, zj) + weighted_sq_diff(wzx, zj, xj) -
                          (log_l[j] - std::log(pr.lengthscale_median)) /
                              (pr.lengthscale_log_sd * pr.lengthscale_log_sd);
  }
  grad[hyper_off + d] = wzz.sum() + wzx.sum() + s * h.sum() -
                        (log_s - std::log(pr.outputscale_median)) /
                            (pr.outputscale_log_sd * pr.outputscale_log_sd);
  return elbo;
}

}  // namespace lse::gp
