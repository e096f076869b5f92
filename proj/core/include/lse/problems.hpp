#pragma once

#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "lse/types.hpp"

namespace lse::problems {

/// Synthetic ground truth: a response probability z(x) over a box and a
/// target threshold theta. Custom problems can be built directly from a
/// probability function; the built-in ones are reachable by name.
struct Problem {
  std::string name;
  Bounds bounds;
  double theta = 0.5;
  /// Two-alternative forced choice: z(x) >= 0.5 everywhere.
  bool two_afc = false;
  std::function<double(const Vector&)> probability;

  std::size_t dim() const { return bounds.dim(); }
  /// z(x). Throws DomainError outside the bounds.
  double true_probability(const Vector& x) const;
  /// Membership of the true sublevel set {z <= theta}.
  bool below_threshold(const Vector& x) const { return true_probability(x) <= theta; }
};

/// "hartmann6_binary", "discrim_lowdim", "discrim_highdim".
const std::vector<std::string>& problem_names();
/// Throws ConfigError for unknown names.
const Problem& get_problem(std::string_view name);

/// Modified Hartmann-6 h(x) = 1 - sum_i alpha_i exp(-sum_j A_ij (x_j - P_ij)^2).
double hartmann6_modified(const Vector& x);
/// Phi(3 h(x) - 2) on [0, 1]^6.
double binarized_hartmann6(const Vector& x);

/// (1 + x2) / (0.05 + 0.4 x1^2 (0.2 x1 - 1)^2) on [-1, 1]^2; nonnegative.
double discrim_2d_latent(const Vector& x);
/// Phi(f(x)), spanning [0.5, 1].
double discrim_2d(const Vector& x);

/// Threshold location c(x) of the 8-d discrimination function.
double discrim_8d_threshold(const Vector& x);
/// 1/2 + 1/2 Phi((x1 - c) / (x5 (2 + c))) on [-1, 1]^8. Where
/// |x5 (2 + c)| <= 1e-9 the step limit 1/2 + 1/2 [x1 >= c] is used.
double discrim_8d(const Vector& x);

/// Bernoulli(p) draw: 1 iff u < p for u uniform on [0, 1).
int bernoulli(double p, std::mt19937_64& rng);
/// Outcome at x drawn from the problem's true probability.
int sample(const Problem& problem, const Vector& x, std::mt19937_64& rng);

}  // namespace lse::problems
