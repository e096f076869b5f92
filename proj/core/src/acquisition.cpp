#include "lse/acquisition.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "lse/error.hpp"
#include "lse/optim/sobol.hpp"
#include "lse/quadrature.hpp"
#include "lse/specfun.hpp"

namespace lse::acq {
namespace {

constexpr std::array<std::pair<AcquisitionTag, std::string_view>, 9> kNames{{
    {AcquisitionTag::kStraddleZ, "StraddleZ"},
    {AcquisitionTag::kLocalSUR, "LocalSUR"},
    {AcquisitionTag::kGlobalSUR, "GlobalSUR"},
    {AcquisitionTag::kLocalMI, "LocalMI"},
    {AcquisitionTag::kGlobalMI, "GlobalMI"},
    {AcquisitionTag::kEAVC, "EAVC"},
    {AcquisitionTag::kBALV, "BALV"},
    {AcquisitionTag::kBALD, "BALD"},
    {AcquisitionTag::kQuasiRandom, "QuasiRandom"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

double ordered_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

PairPosterior pair_at(const PosteriorQuery& q, Eigen::Index i) {
  return {q.mu_q[i], q.var_q[i], q.mu_star, q.var_star, q.cov_qstar[i]};
}

void check_query(const PosteriorQuery& q) {
  if (q.var_q.size() != q.size() || q.cov_qstar.size() != q.size()) {
    throw DomainError("acquisition: posterior query arrays have inconsistent lengths");
  }
}

double min_error(double p) { return std::min(p, 1.0 - p); }

}  // namespace

std::string_view to_string(AcquisitionTag tag) {
  for (const auto& [t, name] : kNames) {
    if (t == tag) return name;
  }
  return "unknown";
}

AcquisitionTag parse_acquisition_tag(std::string_view name) {
  for (const auto& [t, n] : kNames) {
    if (iequals(n, name)) return t;
  }
  throw ConfigError("unknown acquisition '" + std::string(name) + "'");
}

const std::vector<AcquisitionTag>& all_acquisition_tags() {
  static const std::vector<AcquisitionTag> tags = [] {
    std::vector<AcquisitionTag> v;
    for (const auto& [t, n] : kNames) v.push_back(t);
    return v;
  }();
  return tags;
}

AcquisitionKind::AcquisitionKind(AcquisitionTag tag, std::optional<double> beta) : tag_(tag) {
  if (tag == AcquisitionTag::kStraddleZ) {
    beta_ = beta.value_or(kDefaultStraddleBeta);
    if (!std::isfinite(*beta_)) throw ConfigError("StraddleZ beta must be finite");
  } else if (beta) {
    throw ConfigError("beta is only meaningful for StraddleZ");
  }
}

AcquisitionKind AcquisitionKind::parse(std::string_view name, std::optional<double> beta) {
  return AcquisitionKind(parse_acquisition_tag(name), beta);
}

bool AcquisitionKind::is_global() const {
  return tag_ == AcquisitionTag::kGlobalSUR || tag_ == AcquisitionTag::kGlobalMI ||
         tag_ == AcquisitionTag::kEAVC;
}

ReferenceSet ReferenceSet::generate(const Bounds& bounds, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw ConfigError("reference set size must be >= 1");
  optim::SobolStream stream(bounds.dim(), seed);
  ReferenceSet g;
  g.points = bounds.from_unit_rows(stream.draw(size));
  g.volume_constant = bounds.volume() / static_cast<double>(size);
  return g;
}

double straddle_z(double mu, double sigma, double theta, double beta) {
  const ZMoments z = z_moments(mu, sigma);
  return -std::abs(z.mean - theta) + beta * std::sqrt(z.variance);
}

double sur_reduction(const LookaheadPosteriors& p) {
  return min_error(p.pi) - p.p1 * min_error(p.pi1) - (1.0 - p.p1) * min_error(p.pi0);
}

double mi_reduction(const LookaheadPosteriors& p) {
  using specfun::binary_entropy;
  return binary_entropy(p.pi) - p.p1 * binary_entropy(p.pi1) -
         (1.0 - p.p1) * binary_entropy(p.pi0);
}

double local_sur(const PairPosterior& pair, double gamma) {
  return sur_reduction(lookahead_posteriors(pair, gamma));
}

double local_mi(const PairPosterior& pair, double gamma) {
  return mi_reduction(lookahead_posteriors(pair, gamma));
}

double local_sur(double mu, double var, double gamma) {
  return local_sur(PairPosterior::same_point(mu, var), gamma);
}

double local_mi(double mu, double var, double gamma) {
  return local_mi(PairPosterior::same_point(mu, var), gamma);
}

double global_sur(const PosteriorQuery& query, double gamma) {
  check_query(query);
  std::vector<double> terms(static_cast<std::size_t>(query.size()));
  for (Eigen::Index i = 0; i < query.size(); ++i) {
    terms[static_cast<std::size_t>(i)] = sur_reduction(lookahead_posteriors(pair_at(query, i), gamma));
  }
  return ordered_sum(terms);
}

double global_mi(const PosteriorQuery& query, double gamma) {
  check_query(query);
  std::vector<double> terms(static_cast<std::size_t>(query.size()));
  for (Eigen::Index i = 0; i < query.size(); ++i) {
    terms[static_cast<std::size_t>(i)] = mi_reduction(lookahead_posteriors(pair_at(query, i), gamma));
  }
  return ordered_sum(terms);
}

double eavc(const PosteriorQuery& query, double gamma, double volume_constant) {
  check_query(query);
  const auto n = static_cast<std::size_t>(query.size());
  std::vector<double> change1(n);
  std::vector<double> change0(n);
  double p1 = prob_y1(query.mu_star, std::sqrt(std::max(query.var_star, 0.0)));
  for (Eigen::Index i = 0; i < query.size(); ++i) {
    const LookaheadPosteriors post = lookahead_posteriors(pair_at(query, i), gamma);
    change1[static_cast<std::size_t>(i)] = post.pi - post.pi1;
    change0[static_cast<std::size_t>(i)] = post.pi - post.pi0;
    p1 = post.p1;
  }
  const double d1 = std::abs(ordered_sum(change1));
  const double d0 = std::abs(ordered_sum(change0));
  return volume_constant * (p1 * d1 + (1.0 - p1) * d0);
}

double balv(double mu, double sigma) { return z_moments(mu, sigma).variance; }

double bald(double mu, double sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma < 0.0) {
    throw DomainError("bald: need finite mu and sigma >= 0");
  }
  if (sigma == 0.0) return 0.0;
  const GaussHermiteRule& gh = gauss_hermite(30);
  double expected = 0.0;
  for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
    expected += gh.weights[k] * specfun::binary_entropy(specfun::normal_cdf(mu + sigma * gh.nodes[k]));
  }
  return specfun::binary_entropy(prob_y1(mu, sigma)) - expected;
}

double evaluate(const AcquisitionKind& kind, const PosteriorQuery& q, double theta,
                double volume_constant) {
  const double gamma = latent_threshold(theta);
  const double var = std::max(q.var_star, 0.0);
  const double sigma = std::sqrt(var);
  switch (kind.tag()) {
    case AcquisitionTag::kStraddleZ:
      return straddle_z(q.mu_star, sigma, theta, *kind.beta());
    case AcquisitionTag::kLocalSUR:
      return local_sur(q.mu_star, var, gamma);
    case AcquisitionTag::kLocalMI:
      return local_mi(q.mu_star, var, gamma);
    case AcquisitionTag::kGlobalSUR:
      return global_sur(q, gamma);
    case AcquisitionTag::kGlobalMI:
      return global_mi(q, gamma);
    case AcquisitionTag::kEAVC:
      return eavc(q, gamma, volume_constant);
    case AcquisitionTag::kBALV:
      return balv(q.mu_star, sigma);
    case AcquisitionTag::kBALD:
      return bald(q.mu_star, sigma);
    case AcquisitionTag::kQuasiRandom:
      break;
  }
  throw ConfigError("QuasiRandom has no scalar acquisition value");
}

}  // namespace lse::acq
