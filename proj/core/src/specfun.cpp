#include "lse/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/owens_t.hpp>

#include "lse/error.hpp"

namespace lse::specfun {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSingularRho = 1e-12;

// Unchecked Phi; callers have already dealt with NaN.
inline double phi_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

// Gauss-Legendre half-rules on [-1, 1] (positive abscissae; the rule is
// applied symmetrically).
constexpr std::array<double, 3> kW6 = {0.1713244923791705, 0.3607615730481384,
                                       0.4679139345726904};
constexpr std::array<double, 3> kX6 = {0.9324695142031522, 0.6612093864662647,
                                       0.2386191860831970};
constexpr std::array<double, 6> kW12 = {0.04717533638651177, 0.1069393259953183,
                                        0.1600783285433464,  0.2031674267230659,
                                        0.2334925365383547,  0.2491470458134029};
constexpr std::array<double, 6> kX12 = {0.9815606342467191, 0.9041172563704750,
                                        0.7699026741943050, 0.5873179542866171,
                                        0.3678314989981802, 0.1252334085114692};
constexpr std::array<double, 10> kW20 = {
    0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
    0.1019301198172404,  0.1181945319615184,  0.1316886384491766,  0.1420961093183821,
    0.1491729864726037,  0.1527533871307259};
constexpr std::array<double, 10> kX20 = {
    0.9931285991850949, 0.9639719272779138, 0.9122344282513259, 0.8391169718222188,
    0.7463319064601508, 0.6360536807265150, 0.5108670019508271, 0.3737060887154196,
    0.2277858511416451, 0.07652652113349733};

struct HalfRule {
  const double* w;
  const double* x;
  int n;
};

HalfRule rule_for(double abs_r) {
  if (abs_r < 0.3) return {kW6.data(), kX6.data(), 3};
  if (abs_r < 0.75) return {kW12.data(), kX12.data(), 6};
  return {kW20.data(), kX20.data(), 10};
}

// Upper orthant probability P(X > dh, Y > dk), Genz (2004) BVNU.
double bvnu(double dh, double dk, double r) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (dh == inf || dk == inf) return 0.0;
  if (dh == -inf) return dk == -inf ? 1.0 : phi_cdf(-dk);
  if (dk == -inf) return phi_cdf(-dh);
  if (r == 0.0) return phi_cdf(-dh) * phi_cdf(-dk);

  const HalfRule rule = rule_for(std::abs(r));
  double h = dh;
  double k = dk;
  double hk = h * k;
  double bvn = 0.0;

  if (std::abs(r) < 0.925) {
    const double hs = 0.5 * (h * h + k * k);
    const double asr = 0.5 * std::asin(r);
    for (int i = 0; i < rule.n; ++i) {
      for (const double sign : {-1.0, 1.0}) {
        const double sn = std::sin(asr * (1.0 + sign * rule.x[i]));
        bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    bvn = bvn * asr / kTwoPi + phi_cdf(-h) * phi_cdf(-k);
  } else {
    if (r < 0.0) {
      k = -k;
      hk = -hk;
    }
    if (std::abs(r) < 1.0) {
      const double as = (1.0 - r) * (1.0 + r);
      double a = std::sqrt(as);
      const double bs = (h - k) * (h - k);
      const double c = (4.0 - hk) / 8.0;
      const double d = (12.0 - hk) / 80.0;
      double asr = -0.5 * (bs / as + hk);
      if (asr > -100.0) {
        bvn = a * std::exp(asr) * (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
      }
      if (hk > -100.0) {
        const double b = std::sqrt(bs);
        const double sp = std::sqrt(kTwoPi) * phi_cdf(-b / a);
        bvn -= std::exp(-0.5 * hk) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
      }
      a *= 0.5;
      double sum = 0.0;
      for (int i = 0; i < rule.n; ++i) {
        for (const double sign : {-1.0, 1.0}) {
          const double ax = a * (1.0 + sign * rule.x[i]);
          const double xs = ax * ax;
          asr = -0.5 * (bs / xs + hk);
          if (asr > -100.0) {
            const double sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
            const double rs = std::sqrt(1.0 - xs);
            const double ep = std::exp(-0.5 * hk * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
            sum += rule.w[i] * std::exp(asr) * (sp - ep);
          }
        }
      }
      bvn = (a * sum - bvn) / kTwoPi;
    }
    if (r > 0.0) {
      bvn += phi_cdf(-std::max(h, k));
    } else if (h >= k) {
      bvn = -bvn;
    } else {
      const double l = h < 0.0 ? phi_cdf(k) - phi_cdf(h) : phi_cdf(-h) - phi_cdf(-k);
      bvn = l - bvn;
    }
  }
  return std::clamp(bvn, 0.0, 1.0);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite argument");
}

void require_not_nan(double v, const char* what) {
  if (std::isnan(v)) throw DomainError(std::string(what) + ": NaN argument");
}

}  // namespace

BvnCorrelation::BvnCorrelation(double rho) : rho_(rho) {
  if (!(std::abs(rho) <= 1.0)) throw DomainError("bvn correlation must satisfy |rho| <= 1");
}

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  return phi_cdf(x);
}

double log_normal_cdf(double x) {
  require_not_nan(x, "log_normal_cdf");
  if (x > 0.0) return std::log1p(-phi_cdf(-x));
  if (x > -30.0) return std::log(phi_cdf(x));
  // Asymptotic Mills-ratio series; relative error below 1e-12 for x <= -30.
  const double z = 1.0 / (x * x);
  const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(kTwoPi) + std::log(series);
}

double inverse_mills(double x) {
  require_not_nan(x, "inverse_mills");
  if (x > -30.0) return normal_pdf(x) / phi_cdf(x);
  const double z = 1.0 / (x * x);
  const double series = 1.0 - z * (1.0 - 3.0 * z * (1.0 - 5.0 * z * (1.0 - 7.0 * z)));
  return -x / series;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile: p must lie in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double owens_t(double h, double a) {
  require_finite(h, "owens_t");
  require_finite(a, "owens_t");
  if (a == 0.0) return 0.0;
  return boost::math::owens_t(h, a);
}

double bvn_cdf(double x, double y, BvnCorrelation rho) {
  require_not_nan(x, "bvn_cdf");
  require_not_nan(y, "bvn_cdf");
  const double r = rho.value();
  if (r > 1.0 - kSingularRho) return phi_cdf(std::min(x, y));
  if (r < -1.0 + kSingularRho) return std::max(0.0, phi_cdf(x) - phi_cdf(-y));
  return bvnu(-x, -y, r);
}

double bvn_cdf_dx(double x, double y, BvnCorrelation rho) {
  require_finite(x, "bvn_cdf_dx");
  require_not_nan(y, "bvn_cdf_dx");
  const double r = rho.value();
  if (r > 1.0 - kSingularRho) return x < y ? normal_pdf(x) : 0.0;
  if (r < -1.0 + kSingularRho) return -x < y ? normal_pdf(x) : 0.0;
  const double s = std::sqrt((1.0 - r) * (1.0 + r));
  return normal_pdf(x) * phi_cdf((y - r * x) / s);
}

double bvn_cdf_dy(double x, double y, BvnCorrelation rho) { return bvn_cdf_dx(y, x, rho); }

double binary_entropy(double p) {
  p = std::clamp(p, 0.0, 1.0);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace lse::specfun
