#include "lse/gp/dataset.hpp"

#include "lse/error.hpp"

namespace lse::gp {

Dataset::Dataset(Bounds bounds)
    : bounds_(std::move(bounds)), points_(0, static_cast<Eigen::Index>(bounds_.dim())) {}

Dataset::Dataset(Bounds bounds, Matrix points, std::vector<std::uint8_t> outcomes)
    : bounds_(std::move(bounds)), points_(std::move(points)), outcomes_(std::move(outcomes)) {
  if (static_cast<std::size_t>(points_.rows()) != outcomes_.size() ||
      static_cast<std::size_t>(points_.cols()) != bounds_.dim()) {
    throw DomainError("dataset: points/outcomes shape mismatch");
  }
  for (Eigen::Index i = 0; i < points_.rows(); ++i) bounds_.check(points_.row(i).transpose());
  for (auto y : outcomes_) {
    if (y > 1) throw DomainError("dataset: outcomes must be 0 or 1");
  }
}

void Dataset::append(const Vector& x, int y) {
  bounds_.check(x);
  if (y != 0 && y != 1) throw DomainError("dataset: outcomes must be 0 or 1");
  points_.conservativeResize(points_.rows() + 1, Eigen::NoChange);
  points_.row(points_.rows() - 1) = x.transpose();
  outcomes_.push_back(static_cast<std::uint8_t>(y));
}

}  // namespace lse::gp
