#include "lse/types.hpp"

#include <cmath>
#include <string>

#include "lse/error.hpp"

namespace lse {

Bounds::Bounds(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() == 0 || lo_.size() != hi_.size()) {
    throw ConfigError("bounds: lo and hi must be nonempty and of equal length");
  }
  for (Eigen::Index j = 0; j < lo_.size(); ++j) {
    if (!std::isfinite(lo_[j]) || !std::isfinite(hi_[j]) || !(lo_[j] < hi_[j])) {
      throw ConfigError("bounds: require finite lo < hi on axis " + std::to_string(j));
    }
  }
}

Bounds Bounds::uniform(std::size_t dim, double lo, double hi) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Bounds(Vector::Constant(n, lo), Vector::Constant(n, hi));
}

double Bounds::volume() const { return range().prod(); }

bool Bounds::contains(const Vector& x) const {
  if (x.size() != lo_.size()) return false;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (!(x[j] >= lo_[j] && x[j] <= hi_[j])) return false;
  }
  return true;
}

void Bounds::check(const Vector& x) const {
  if (x.size() != lo_.size()) {
    throw DomainError("point has dimension " + std::to_string(x.size()) + ", expected " +
                      std::to_string(lo_.size()));
  }
  if (!contains(x)) throw DomainError("point outside bounds");
}

Vector Bounds::to_unit(const Vector& x) const {
  return ((x - lo_).array() / (hi_ - lo_).array()).matrix();
}

Vector Bounds::from_unit(const Vector& u) const {
  return project(lo_ + (u.array() * (hi_ - lo_).array()).matrix());
}

Matrix Bounds::from_unit_rows(const Matrix& u) const {
  Matrix out(u.rows(), u.cols());
  for (Eigen::Index i = 0; i < u.rows(); ++i) out.row(i) = from_unit(u.row(i).transpose()).transpose();
  return out;
}

Vector Bounds::project(const Vector& x) const { return x.cwiseMax(lo_).cwiseMin(hi_); }

}  // namespace lse
