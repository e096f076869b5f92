#pragma once

#include <random>

#include "lse/types.hpp"

namespace lse::gp {

/// Lloyd's k-means with `restarts` random initializations (k distinct data
/// points each). Returns the centers of the lowest-inertia run, ties going to
/// the earliest restart, with duplicate centers removed. When k >= the number
/// of points the (deduplicated) points themselves are returned.
Matrix kmeans(const Matrix& points, Eigen::Index k, int restarts, int max_iterations,
              std::mt19937_64& rng);

}  // namespace lse::gp
