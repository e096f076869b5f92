#pragma once

#include <cstdint>
#include <vector>

#include "lse/types.hpp"

namespace lse::gp {

/// Ordered binary observations inside a box.
class Dataset {
 public:
  explicit Dataset(Bounds bounds);
  Dataset(Bounds bounds, Matrix points, std::vector<std::uint8_t> outcomes);

  /// Throws DomainError if x lies outside the bounds or y is not 0/1.
  void append(const Vector& x, int y);

  const Bounds& bounds() const { return bounds_; }
  std::size_t size() const { return outcomes_.size(); }
  bool empty() const { return outcomes_.empty(); }
  std::size_t dim() const { return bounds_.dim(); }
  /// n x d, one observation per row.
  const Matrix& points() const { return points_; }
  const std::vector<std::uint8_t>& outcomes() const { return outcomes_; }

 private:
  Bounds bounds_;
  Matrix points_;
  std::vector<std::uint8_t> outcomes_;
};

}  // namespace lse::gp
