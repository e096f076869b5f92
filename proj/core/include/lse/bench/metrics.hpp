#pragma once

#include <cstdint>
#include <vector>

#include "lse/gp/model.hpp"
#include "lse/problems.hpp"
#include "lse/types.hpp"

namespace lse::bench {

/// Mean of (p_i - truth_i)^2. Throws DomainError on length mismatch or empty input.
double brier(const Vector& probs, const std::vector<std::uint8_t>& truth);

/// Mean of p_i (1 - y_i) + (1 - p_i) y_i.
double expected_classification_error(const Vector& probs, const std::vector<std::uint8_t>& truth);

/// Any coordinate within `fraction` of its axis range from either face.
bool is_edge_point(const Vector& x, const Bounds& bounds, double fraction = 0.05);

/// Share of rows of `points` that are edge points; 0 for an empty set.
double edge_sample_rate(const Matrix& points, const Bounds& bounds, double fraction = 0.05);

/// Held-out points and their true sublevel membership 1[z(x) <= theta].
struct TestSet {
  Matrix points;
  std::vector<std::uint8_t> truth_below;

  static TestSet generate(const problems::Problem& problem, double theta, std::size_t size,
                          std::uint64_t seed);
};

/// Level-set posterior P(f(x) <= gamma) at every test point.
Vector level_set_probabilities(const gp::GpModel& model, const Matrix& points, double gamma);

}  // namespace lse::bench
