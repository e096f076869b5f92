#pragma once

// Scalar special functions behind every closed-form level-set expression:
// the standard normal density / CDF, Owen's T function and the standard
// bivariate normal CDF. All functions are pure and thread-safe.

namespace lse::specfun {

/// Correlation coefficient of a standard bivariate normal, |rho| <= 1.
class BvnCorrelation {
 public:
  /// Throws DomainError when |rho| > 1 or rho is NaN.
  explicit BvnCorrelation(double rho);
  double value() const { return rho_; }

 private:
  double rho_;
};

double normal_pdf(double x);

/// Phi(x). Throws DomainError for non-finite x.
double normal_cdf(double x);

/// log Phi(x), accurate far into the lower tail.
double log_normal_cdf(double x);

/// phi(x) / Phi(x) (inverse Mills ratio), accurate for very negative x.
double inverse_mills(double x);

/// Phi^{-1}(p) for p in (0, 1).
double normal_quantile(double p);

/// Owen's T(h, a) = 1/(2 pi) * int_0^a exp(-h^2 (1 + x^2) / 2) / (1 + x^2) dx.
double owens_t(double h, double a);

/// P(X <= x, Y <= y) for a standard bivariate normal with correlation rho.
/// x and y may be +-infinity. Genz's Gauss-Legendre reduction; exact limiting
/// forms are used once |rho| > 1 - 1e-12.
double bvn_cdf(double x, double y, BvnCorrelation rho);

/// d/dx bvn_cdf(x, y, rho) = phi(x) Phi((y - rho x) / sqrt(1 - rho^2)).
double bvn_cdf_dx(double x, double y, BvnCorrelation rho);
/// d/dy bvn_cdf(x, y, rho).
double bvn_cdf_dy(double x, double y, BvnCorrelation rho);

/// Binary entropy in bits with 0 log 0 := 0. p is clamped to [0, 1].
double binary_entropy(double p);

}  // namespace lse::specfun
