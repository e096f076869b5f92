#pragma once

#include "lse/types.hpp"

namespace lse::gp {

/// ARD RBF kernel k(u, v) = outputscale * exp(-0.5 * sum_j ((u_j - v_j) / l_j)^2).
/// The surrogate works in unit-cube coordinates, so lengthscales are
/// fractions of each axis' range.
struct KernelParams {
  Vector lengthscales;
  double outputscale = 1.0;

  /// Throws DomainError unless every parameter is finite and positive.
  void validate() const;
};

double rbf(const KernelParams& kernel, const Vector& u, const Vector& v);

/// Cross-covariance K(a, b) between the rows of a and the rows of b.
Matrix rbf_matrix(const KernelParams& kernel, const Matrix& a, const Matrix& b);

}  // namespace lse::gp
