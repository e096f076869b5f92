#include "lse/gp/kernel.hpp"

#include <cmath>

#include "lse/error.hpp"

namespace lse::gp {

void KernelParams::validate() const {
  if (lengthscales.size() == 0) throw DomainError("kernel: no lengthscales");
  for (Eigen::Index j = 0; j < lengthscales.size(); ++j) {
    if (!(std::isfinite(lengthscales[j]) && lengthscales[j] > 0.0)) {
      throw DomainError("kernel: lengthscales must be finite and positive");
    }
  }
  if (!(std::isfinite(outputscale) && outputscale > 0.0)) {
    throw DomainError("kernel: outputscale must be finite and positive");
  }
}

double rbf(const KernelParams& kernel, const Vector& u, const Vector& v) {
  const double r2 = ((u - v).array() / kernel.lengthscales.array()).square().sum();
  return kernel.outputscale * std::exp(-0.5 * r2);
}

Matrix rbf_matrix(const KernelParams& kernel, const Matrix& a, const Matrix& b) {
  const Eigen::ArrayXd inv_l = kernel.lengthscales.array().inverse();
  const Matrix as = a * inv_l.matrix().asDiagonal();
  const Matrix bs = b * inv_l.matrix().asDiagonal();
  Matrix out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < bs.rows(); ++j) {
    for (Eigen::Index i = 0; i < as.rows(); ++i) {
      out(i, j) = kernel.outputscale * std::exp(-0.5 * (as.row(i) - bs.row(j)).squaredNorm());
    }
  }
  return out;
}

}  // namespace lse::gp
