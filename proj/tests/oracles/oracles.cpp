#include "oracles.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace lse::oracle {
namespace {

constexpr double kTail = 10.0;

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller pair; avoids sharing the library's sampling code.
std::pair<double, double> normal_pair(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform(rng);
  const double u2 = uniform(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
}

}  // namespace

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double bvn(double x, double y, double rho) {
  const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
  if (s < 1e-12) return rho > 0.0 ? cdf(std::min(x, y)) : std::max(0.0, cdf(x) - cdf(-y));
  const double ux = std::min(x, kTail);
  auto inner = [&](double u) {
    const double top = std::min((y - rho * u) / s, kTail);
    return phi(u) * integrate(phi, -kTail, top, 0.5);
  };
  return integrate(inner, -kTail, ux, std::min(0.25, 2.0 * s));
}

double owens_t(double h, double a) {
  auto f = [h](double x) { return std::exp(-0.5 * h * h * (1.0 + x * x)) / (1.0 + x * x); };
  const double v = integrate(f, 0.0, std::abs(a), 0.05) / (2.0 * std::numbers::pi);
  return a < 0.0 ? -v : v;
}

ZMomentsMc z_moments_mc(double mu, double sigma, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Power sums about a pilot value keep the variance free of cancellation.
  const double pilot = cdf(mu / std::sqrt(1.0 + sigma * sigma));
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  std::size_t count = 0;
  while (count < n) {
    const auto [g1, g2] = normal_pair(rng);
    for (double g : {g1, g2}) {
      const double d = cdf(mu + sigma * g) - pilot;
      s1 += d;
      s2 += d * d;
      s3 += d * d * d;
      s4 += d * d * d * d;
      ++count;
    }
  }
  const double m = static_cast<double>(count);
  const double e1 = s1 / m, e2 = s2 / m, e3 = s3 / m, e4 = s4 / m;
  const double var = e2 - e1 * e1;
  const double c4 = e4 - 4 * e1 * e3 + 6 * e1 * e1 * e2 - 3 * e1 * e1 * e1 * e1;
  ZMomentsMc out;
  out.mean = {pilot + e1, std::sqrt(var / m)};
  out.variance = {var * m / (m - 1.0), std::sqrt(std::max(c4 - var * var, 0.0) / m)};
  return out;
}

PosteriorsMc lookahead_mc(double mu_q, double var_q, double mu_s, double var_s, double cov,
                          double gamma, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double sd_s = std::sqrt(var_s);
  const double beta = var_s > 0.0 ? cov / var_s : 0.0;
  const double resid = std::sqrt(std::max(var_q - beta * cov, 0.0));
  // Accumulate weighted sums for numerator (w * I) and denominator (w).
  double n1 = 0, d1 = 0, n1n1 = 0, d1d1 = 0, n1d1 = 0;
  double n0 = 0, d0 = 0, n0n0 = 0, d0d0 = 0, n0d0 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [g1, g2] = normal_pair(rng);
    const double fs = mu_s + sd_s * g1;
    const double fq = mu_q + beta * (fs - mu_s) + resid * g2;
    const double w1 = cdf(fs);
    const double w0 = 1.0 - w1;
    const double ind = fq <= gamma ? 1.0 : 0.0;
    const double a1 = w1 * ind, a0 = w0 * ind;
    n1 += a1; d1 += w1; n1n1 += a1 * a1; d1d1 += w1 * w1; n1d1 += a1 * w1;
    n0 += a0; d0 += w0; n0n0 += a0 * a0; d0d0 += w0 * w0; n0d0 += a0 * w0;
  }
  const double m = static_cast<double>(n);
  auto ratio = [m](double num, double den, double nn, double dd, double nd) {
    const double r = num / den;
    const double mn = num / m, md = den / m;
    const double vn = nn / m - mn * mn, vd = dd / m - md * md, c = nd / m - mn * md;
    const double v = (vn - 2 * r * c + r * r * vd) / (md * md * m);
    return Estimate{r, std::sqrt(std::max(v, 0.0))};
  };
  return {ratio(n1, d1, n1n1, d1d1, n1d1), ratio(n0, d0, n0n0, d0d0, n0d0)};
}

double local_mi_quadrature(double mu, double sigma, double gamma) {
  auto h = [](double p) {
    double v = 0.0;
    if (p > 0.0) v -= p * std::log2(p);
    if (p < 1.0) v -= (1.0 - p) * std::log2(1.0 - p);
    return v;
  };
  auto dens = [&](double f) { return phi((f - mu) / sigma) / sigma; };
  const double lo = mu - kTail * sigma;
  const double hi = mu + kTail * sigma;
  const double width = sigma / 8.0;
  const double below = integrate(dens, lo, gamma, width);
  const double joint1_below = integrate([&](double f) { return dens(f) * cdf(f); }, lo, gamma, width);
  const double joint1_above = integrate([&](double f) { return dens(f) * cdf(f); }, gamma, hi, width);
  const double p1 = joint1_below + joint1_above;
  const double pi1 = joint1_below / p1;
  const double pi0 = (below - joint1_below) / (1.0 - p1);
  return h(below) - p1 * h(pi1) - (1.0 - p1) * h(pi0);
}

double hartmann6_binary(const std::vector<double>& x) {
  static const double alpha[4] = {2.0, 2.2, 2.8, 3.0};
  static const double A[4][6] = {{8, 3, 10, 3.5, 1.7, 6},
                                 {0.5, 8, 10, 1.0, 6, 9},
                                 {3, 3.5, 1.7, 8, 10, 6},
                                 {10, 6, 0.5, 8, 1.0, 9}};
  static const double P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                 {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                 {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                 {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double q = 0.0;
    for (int j = 0; j < 6; ++j) q += A[i][j] * (x[j] - P[i][j]) * (x[j] - P[i][j]);
    sum += alpha[i] * std::exp(-q);
  }
  return cdf(3.0 * (1.0 - sum) - 2.0);
}

double discrim_2d(const std::vector<double>& x) {
  const double denom = 0.05 + 0.4 * std::pow(x[0], 2) * std::pow(0.2 * x[0] - 1.0, 2);
  return cdf((1.0 + x[1]) / denom);
}

double discrim_8d(const std::vector<double>& x) {
  const double pi = std::numbers::pi;
  const double w = x[1] * x[7];
  const double c = (x[2] / 2.0 * (1.0 - std::cos(3.0 / 5.0 * pi * w + x[6])) + x[3]) *
                       (2.0 - x[5] * (1.0 + std::sin(3.0 / 10.0 * pi * w + x[6]))) -
                   1.0;
  return 0.5 + 0.5 * cdf((x[0] - c) / (x[4] * (2.0 + c)));
}

}  // namespace lse::oracle
