#include "lse/problems.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "lse/error.hpp"
#include "lse/random.hpp"
#include "lse/specfun.hpp"

namespace lse::problems {
namespace {

constexpr std::array<double, 4> kAlpha{2.0, 2.2, 2.8, 3.0};
constexpr std::array<std::array<double, 6>, 4> kA{{
    {8, 3, 10, 3.5, 1.7, 6},
    {0.5, 8, 10, 1.0, 6, 9},
    {3, 3.5, 1.7, 8, 10, 6},
    {10, 6, 0.5, 8, 1.0, 9},
}};
constexpr std::array<std::array<double, 6>, 4> kP{{
    {1312, 1696, 5569, 124, 8283, 5886},
    {2329, 4135, 8307, 3736, 1004, 9991},
    {2348, 1451, 3522, 2883, 3047, 6650},
    {4047, 8828, 8732, 5743, 1091, 381},
}};

constexpr double kDenominatorGuard = 1e-9;

void check_dim(const Vector& x, Eigen::Index d, const char* name) {
  if (x.size() != d) throw DomainError(std::string(name) + ": wrong input dimension");
}

std::vector<Problem> make_builtin() {
  std::vector<Problem> v;
  v.push_back({"hartmann6_binary", Bounds::uniform(6, 0.0, 1.0), 0.5, false, binarized_hartmann6});
  v.push_back({"discrim_lowdim", Bounds::uniform(2, -1.0, 1.0), 0.75, true, discrim_2d});
  v.push_back({"discrim_highdim", Bounds::uniform(8, -1.0, 1.0), 0.75, true, discrim_8d});
  return v;
}

const std::vector<Problem>& builtin() {
  static const std::vector<Problem> problems = make_builtin();
  return problems;
}

}  // namespace

double Problem::true_probability(const Vector& x) const {
  bounds.check(x);
  return probability(x);
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& p : builtin()) n.push_back(p.name);
    return n;
  }();
  return names;
}

const Problem& get_problem(std::string_view name) {
  for (const auto& p : builtin()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown problem '" + std::string(name) + "'");
}

double hartmann6_modified(const Vector& x) {
  check_dim(x, 6, "hartmann6");
  double h = 1.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double e = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
      const double diff = x[static_cast<Eigen::Index>(j)] - 1e-4 * kP[i][j];
      e += kA[i][j] * diff * diff;
    }
    h -= kAlpha[i] * std::exp(-e);
  }
  return h;
}

double binarized_hartmann6(const Vector& x) {
  return specfun::normal_cdf(3.0 * hartmann6_modified(x) - 2.0);
}

double discrim_2d_latent(const Vector& x) {
  check_dim(x, 2, "discrim_2d");
  const double x1 = x[0];
  const double t = 0.2 * x1 - 1.0;
  return (1.0 + x[1]) / (0.05 + 0.4 * x1 * x1 * t * t);
}

double discrim_2d(const Vector& x) { return specfun::normal_cdf(discrim_2d_latent(x)); }

double discrim_8d_threshold(const Vector& x) {
  check_dim(x, 8, "discrim_8d");
  constexpr double pi = std::numbers::pi;
  const double phase = x[1] * x[7];
  const double first = 0.5 * x[2] * (1.0 - std::cos(0.6 * pi * phase + x[6])) + x[3];
  const double second = 2.0 - x[5] * (1.0 + std::sin(0.3 * pi * phase + x[6]));
  return first * second - 1.0;
}

double discrim_8d(const Vector& x) {
  const double c = discrim_8d_threshold(x);
  const double den = x[4] * (2.0 + c);
  if (std::abs(den) <= kDenominatorGuard) return x[0] >= c ? 1.0 : 0.5;
  return 0.5 + 0.5 * specfun::normal_cdf((x[0] - c) / den);
}

int bernoulli(double p, std::mt19937_64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli: p must lie in [0, 1]");
  return uniform01(rng) < p ? 1 : 0;
}

int sample(const Problem& problem, const Vector& x, std::mt19937_64& rng) {
  return bernoulli(problem.true_probability(x), rng);
}

}  // namespace lse::problems
