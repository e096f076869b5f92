#pragma once

#include "lse/types.hpp"

namespace lse {

/// Joint latent posterior summary handed from the surrogate to the
/// acquisition layer: marginals at the query points and at a candidate x*,
/// plus Cov[f(x_q), f(x*)] for every query point.
struct PosteriorQuery {
  Vector mu_q;
  Vector var_q;
  double mu_star = 0.0;
  double var_star = 0.0;
  Vector cov_qstar;

  Eigen::Index size() const { return mu_q.size(); }
};

}  // namespace lse
