#pragma once

#include "lse/error.hpp"

namespace lse {

/// Raw look-ahead probabilities left [0, 1] by more than rounding allows.
class LookaheadError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Joint latent posterior of (f(x_q), f(x_*)).
struct PairPosterior {
  double mu_q = 0.0;
  double var_q = 1.0;
  double mu_star = 0.0;
  double var_star = 1.0;
  double cov_qstar = 0.0;

  /// The x_q = x_* case: one marginal, perfectly correlated with itself.
  static PairPosterior same_point(double mu, double var) { return {mu, var, mu, var, var}; }
};

/// Scalars shared by every closed-form acquisition:
///   a* = mu* / sqrt(1 + s*^2), b_q = (gamma - mu_q) / s_q, c* = 1 / sqrt(1 + 2 s*^2),
///   p1 = Phi(a*), z_qstar = P(y* = 1, f_q <= gamma).
struct LookaheadTerms {
  double a_star = 0.0;
  double b_q = 0.0;
  double c_star = 1.0;
  double rho = 0.0;
  double p1 = 0.5;
  double pi = 0.5;       // Phi(b_q), the current level-set posterior
  double z_qstar = 0.25;
  double z0_qstar = 0.25;  // P(y* = 0, f_q <= gamma) = pi - z_qstar
};

struct ZMoments {
  double mean = 0.0;
  double variance = 0.0;
};

struct LookaheadPosteriors {
  double pi1 = 0.0;
  double pi0 = 0.0;
  double p1 = 0.5;
  double pi = 0.5;
  /// p1 was within 1e-12 of 0 or 1; the impossible branch holds pi.
  bool degenerate = false;
};

/// Latent threshold gamma = Phi^{-1}(theta). Throws DomainError unless 0 < theta < 1.
double latent_threshold(double theta);

/// P(f(x) <= gamma) = Phi((gamma - mu) / sigma). Throws DomainError for sigma <= 0.
double level_set_posterior(double mu, double sigma, double gamma);

/// Posterior mean and variance of z = Phi(f) for f ~ N(mu, sigma^2).
ZMoments z_moments(double mu, double sigma);

/// P(y = 1) = Phi(mu / sqrt(1 + sigma^2)).
double prob_y1(double mu, double sigma);

/// Throws DomainError on negative variances or non-finite inputs.
LookaheadTerms lookahead_terms(const PairPosterior& pair, double gamma);

/// Level-set posterior at x_q after observing y* = 1 (pi1) or y* = 0 (pi0).
/// Throws LookaheadError if a raw value lies outside [-1e-7, 1 + 1e-7].
LookaheadPosteriors lookahead_posteriors(const LookaheadTerms& terms);
LookaheadPosteriors lookahead_posteriors(const PairPosterior& pair, double gamma);

}  // namespace lse
