#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace lse {

using Vector = Eigen::VectorXd;
/// Point sets are stored one point per row.
using Matrix = Eigen::MatrixXd;

/// Axis-aligned box [lo_j, hi_j] in R^d.
class Bounds {
 public:
  Bounds() = default;
  Bounds(Vector lo, Vector hi);
  /// Same interval on every axis.
  static Bounds uniform(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return static_cast<std::size_t>(lo_.size()); }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  Vector range() const { return hi_ - lo_; }
  double volume() const;

  bool contains(const Vector& x) const;
  /// Throws DomainError unless x has the right dimension and lies in the box.
  void check(const Vector& x) const;

  Vector to_unit(const Vector& x) const;
  /// Clamped into the box, so rounding never leaves it.
  Vector from_unit(const Vector& u) const;
  /// Maps every row of a [0,1]^d point set into the box.
  Matrix from_unit_rows(const Matrix& u) const;
  Vector project(const Vector& x) const;

  friend bool operator==(const Bounds& a, const Bounds& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Vector lo_;
  Vector hi_;
};

}  // namespace lse
