#pragma once

#include <vector>

namespace lse {

/// Gauss-Hermite rule for expectations under N(0, 1):
/// E[g(t)] ~= sum_k weights[k] * g(nodes[k]); weights sum to one.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch construction; results for a given n are cached.
const GaussHermiteRule& gauss_hermite(int n);

}  // namespace lse
