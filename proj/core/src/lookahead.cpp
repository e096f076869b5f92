#include "lse/lookahead.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lse/specfun.hpp"

namespace lse {
namespace {

constexpr double kSigmaFloor = 1e-6;
constexpr double kDegenerate = 1e-12;
constexpr double kRawTolerance = 1e-7;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string("lookahead: non-finite ") + what);
}

double checked_probability(double raw, const char* what) {
  if (!(raw >= -kRawTolerance && raw <= 1.0 + kRawTolerance)) {
    throw LookaheadError(std::string("lookahead: ") + what + " out of range: " + std::to_string(raw));
  }
  return std::clamp(raw, 0.0, 1.0);
}

// Clamp a joint probability P(A, B) to its Frechet bounds.
double frechet_clamp(double joint, double pa, double pb) {
  const double hi = std::min(pa, pb);
  const double lo = std::min(std::max(0.0, pa + pb - 1.0), hi);
  return std::clamp(joint, lo, hi);
}

}  // namespace

double latent_threshold(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("threshold theta must lie in (0, 1)");
  return specfun::normal_quantile(theta);
}

double level_set_posterior(double mu, double sigma, double gamma) {
  require_finite(mu, "mean");
  require_finite(gamma, "threshold");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("level_set_posterior: sigma must be > 0");
  return specfun::normal_cdf((gamma - mu) / sigma);
}

ZMoments z_moments(double mu, double sigma) {
  require_finite(mu, "mean");
  require_finite(sigma, "sigma");
  if (sigma < 0.0) throw DomainError("z_moments: sigma must be >= 0");
  const double a = mu / std::sqrt(1.0 + sigma * sigma);
  const double mean = specfun::normal_cdf(a);
  if (sigma == 0.0) return {mean, 0.0};
  const double c = 1.0 / std::sqrt(1.0 + 2.0 * sigma * sigma);
  const double upper = mean * specfun::normal_cdf(-a);
  const double var = upper - 2.0 * specfun::owens_t(a, c);
  return {mean, std::clamp(var, 0.0, upper)};
}

double prob_y1(double mu, double sigma) {
  require_finite(mu, "mean");
  require_finite(sigma, "sigma");
  if (sigma < 0.0) throw DomainError("prob_y1: sigma must be >= 0");
  return specfun::normal_cdf(mu / std::sqrt(1.0 + sigma * sigma));
}

LookaheadTerms lookahead_terms(const PairPosterior& p, double gamma) {
  require_finite(p.mu_q, "mu_q");
  require_finite(p.mu_star, "mu_star");
  require_finite(p.cov_qstar, "cov_qstar");
  require_finite(gamma, "threshold");
  if (!(p.var_q >= 0.0) || !(p.var_star >= 0.0) || !std::isfinite(p.var_q) ||
      !std::isfinite(p.var_star)) {
    throw DomainError("lookahead: variances must be finite and >= 0");
  }
  LookaheadTerms t;
  const double s_star2 = p.var_star;
  const double sigma_q = std::max(std::sqrt(p.var_q), kSigmaFloor);
  const double root = std::sqrt(1.0 + s_star2);
  t.a_star = p.mu_star / root;
  t.b_q = (gamma - p.mu_q) / sigma_q;
  t.c_star = 1.0 / std::sqrt(1.0 + 2.0 * s_star2);
  t.rho = std::clamp(-p.cov_qstar / (sigma_q * root), -1.0, 1.0);
  t.p1 = specfun::normal_cdf(t.a_star);
  t.pi = specfun::normal_cdf(t.b_q);
  const double p0 = specfun::normal_cdf(-t.a_star);

  // Evaluate the bivariate CDF for the less likely outcome, where it is the
  // small quantity, and get the other branch by subtraction.
  double z1;
  double z0;
  if (t.rho == 0.0) {
    z1 = t.p1 * t.pi;
    z0 = p0 * t.pi;
  } else if (t.p1 <= 0.5) {
    z1 = specfun::bvn_cdf(t.a_star, t.b_q, specfun::BvnCorrelation(t.rho));
    z0 = t.pi - z1;
  } else {
    z0 = specfun::bvn_cdf(-t.a_star, t.b_q, specfun::BvnCorrelation(-t.rho));
    z1 = t.pi - z0;
  }
  t.z_qstar = frechet_clamp(z1, t.p1, t.pi);
  t.z0_qstar = frechet_clamp(z0, p0, t.pi);
  return t;
}

LookaheadPosteriors lookahead_posteriors(const LookaheadTerms& t) {
  LookaheadPosteriors out;
  out.p1 = t.p1;
  out.pi = t.pi;
  const double p0 = specfun::normal_cdf(-t.a_star);
  if (t.p1 < kDegenerate) {
    out.degenerate = true;
    out.pi1 = t.pi;
    out.pi0 = checked_probability(t.z0_qstar / p0, "pi0");
  } else if (p0 < kDegenerate) {
    out.degenerate = true;
    out.pi1 = checked_probability(t.z_qstar / t.p1, "pi1");
    out.pi0 = t.pi;
  } else {
    out.pi1 = checked_probability(t.z_qstar / t.p1, "pi1");
    out.pi0 = checked_probability(t.z0_qstar / p0, "pi0");
  }
  return out;
}

LookaheadPosteriors lookahead_posteriors(const PairPosterior& pair, double gamma) {
  return lookahead_posteriors(lookahead_terms(pair, gamma));
}

}  // namespace lse
