#include "lse/bench/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "lse/error.hpp"
#include "lse/optim/sobol.hpp"
#include "lse/specfun.hpp"

namespace lse::bench {
namespace {

constexpr double kSigmaFloor = 1e-6;

void check_lengths(const Vector& probs, const std::vector<std::uint8_t>& truth) {
  if (probs.size() == 0 || static_cast<std::size_t>(probs.size()) != truth.size()) {
    throw DomainError("metric: probabilities and truth must be nonempty and of equal length");
  }
}

}  // namespace

double brier(const Vector& probs, const std::vector<std::uint8_t>& truth) {
  check_lengths(probs, truth);
  double s = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double d = probs[i] - static_cast<double>(truth[static_cast<std::size_t>(i)]);
    s += d * d;
  }
  return s / static_cast<double>(probs.size());
}

double expected_classification_error(const Vector& probs, const std::vector<std::uint8_t>& truth) {
  check_lengths(probs, truth);
  double s = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    const double y = static_cast<double>(truth[static_cast<std::size_t>(i)]);
    s += p * (1.0 - y) + (1.0 - p) * y;
  }
  return s / static_cast<double>(probs.size());
}

bool is_edge_point(const Vector& x, const Bounds& bounds, double fraction) {
  const Vector range = bounds.range();
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double margin = fraction * range[j];
    if (x[j] - bounds.lo()[j] <= margin || bounds.hi()[j] - x[j] <= margin) return true;
  }
  return false;
}

double edge_sample_rate(const Matrix& points, const Bounds& bounds, double fraction) {
  if (points.rows() == 0) return 0.0;
  Eigen::Index edges = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (is_edge_point(points.row(i).transpose(), bounds, fraction)) ++edges;
  }
  return static_cast<double>(edges) / static_cast<double>(points.rows());
}

TestSet TestSet::generate(const problems::Problem& problem, double theta, std::size_t size,
                          std::uint64_t seed) {
  optim::SobolStream stream(problem.dim(), seed);
  TestSet t;
  t.points = problem.bounds.from_unit_rows(stream.draw(size));
  t.truth_below.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    t.truth_below[i] = problem.true_probability(t.points.row(static_cast<Eigen::Index>(i)).transpose()) <= theta;
  }
  return t;
}

Vector level_set_probabilities(const gp::GpModel& model, const Matrix& points, double gamma) {
  const gp::LatentMarginals m = model.marginals(points);
  Vector p(points.rows());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double sigma = std::max(std::sqrt(m.var[i]), kSigmaFloor);
    p[i] = specfun::normal_cdf((gamma - m.mean[i]) / sigma);
  }
  return p;
}

}  // namespace lse::bench
