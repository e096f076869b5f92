#include "lse/gp/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "lse/error.hpp"

namespace lse::gp {
namespace {

Matrix unique_rows(const Matrix& m) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    bool dup = false;
    for (Eigen::Index j : keep) {
      if (m.row(i) == m.row(j)) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(i);
  }
  Matrix out(static_cast<Eigen::Index>(keep.size()), m.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(keep[r]);
  return out;
}

struct Clustering {
  Matrix centers;
  double inertia;
};

Clustering lloyd(const Matrix& x, Matrix centers, int max_iterations) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = centers.rows();
  std::vector<Eigen::Index> assign(static_cast<std::size_t>(n), -1);
  double inertia = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < k; ++c) {
        const double d = (x.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {  // strict: ties go to the first center
          best_d = d;
          best = c;
        }
      }
      inertia += best_d;
      if (assign[static_cast<std::size_t>(i)] != best) {
        assign[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed && it > 0) break;
    Matrix sums = Matrix::Zero(k, x.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(assign[static_cast<std::size_t>(i)]) += x.row(i);
      ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      // Empty clusters keep their previous center.
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      }
    }
  }
  return {std::move(centers), inertia};
}

}  // namespace

Matrix kmeans(const Matrix& points, Eigen::Index k, int restarts, int max_iterations,
              std::mt19937_64& rng) {
  if (points.rows() == 0 || k < 1) throw DomainError("kmeans: need points and k >= 1");
  const Matrix distinct = unique_rows(points);
  const Eigen::Index n = distinct.rows();
  if (k >= n) return distinct;

  std::optional<Clustering> best;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (int r = 0; r < std::max(1, restarts); ++r) {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    for (Eigen::Index i = 0; i < k; ++i) {
      std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
    }
    Matrix init(k, distinct.cols());
    for (Eigen::Index c = 0; c < k; ++c) init.row(c) = distinct.row(order[static_cast<std::size_t>(c)]);
    Clustering run = lloyd(distinct, std::move(init), max_iterations);
    if (!best || run.inertia < best->inertia) best = std::move(run);
  }
  return unique_rows(best->centers);
}

}  // namespace lse::gp
