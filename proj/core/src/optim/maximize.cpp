#include "lse/optim/maximize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace lse::optim {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class Counted {
 public:
  explicit Counted(const std::function<double(const Vector&)>& f) : f_(f) {}
  double operator()(const Vector& u) {
    ++count_;
    const double v = f_(u);
    return std::isfinite(v) ? v : kNegInf;
  }
  std::size_t count() const { return count_; }

 private:
  const std::function<double(const Vector&)>& f_;
  std::size_t count_ = 0;
};

Vector clip_unit(Vector u) { return u.cwiseMax(0.0).cwiseMin(1.0); }

Vector fd_gradient(Counted& f, const Vector& x, double fx, double h) {
  Vector g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector xp = x;
    Vector xm = x;
    double lo = x[j] - h;
    double hi = x[j] + h;
    if (lo < 0.0) {
      lo = x[j];
    }
    if (hi > 1.0) {
      hi = x[j];
    }
    xp[j] = hi;
    xm[j] = lo;
    const double fp = hi == x[j] ? fx : f(xp);
    const double fm = lo == x[j] ? fx : f(xm);
    g[j] = (fp - fm) / (hi - lo);
  }
  return g;
}

// Projected gradient ascent with an adaptive step and backtracking.
void refine(Counted& f, Vector& x, double& fx, const MaximizeBudget& b) {
  double step = b.initial_step;
  for (int it = 0; it < b.refine_iterations; ++it) {
    Vector g = fd_gradient(f, x, fx, b.fd_step);
    if (!g.allFinite()) return;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if ((x[j] <= 0.0 && g[j] < 0.0) || (x[j] >= 1.0 && g[j] > 0.0)) g[j] = 0.0;
    }
    const double norm = g.norm();
    if (!(norm > 0.0)) return;
    const Vector dir = g / norm;
    bool improved = false;
    for (int tries = 0; tries <= b.max_backtracks; ++tries) {
      const Vector y = clip_unit(x + step * dir);
      const double fy = f(y);
      if (fy > fx) {
        x = y;
        fx = fy;
        step = std::min(2.0 * step, b.max_step);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) return;
  }
}

}  // namespace

void MaximizeBudget::validate() const {
  if (raw_candidates < 1) throw ConfigError("optimizer.raw_candidates must be >= 1");
  if (refine_starts < 0) throw ConfigError("optimizer.refine_starts must be >= 0");
  if (refine_iterations < 0) throw ConfigError("optimizer.refine_iterations must be >= 0");
  if (!(fd_step > 0.0 && fd_step < 0.5)) throw ConfigError("optimizer.fd_step must lie in (0, 0.5)");
  if (!(initial_step > 0.0) || !(max_step >= initial_step)) {
    throw ConfigError("optimizer steps must satisfy 0 < initial_step <= max_step");
  }
  if (max_backtracks < 0) throw ConfigError("optimizer.max_backtracks must be >= 0");
}

MaximizeResult maximize(const std::function<double(const Vector&)>& f, std::size_t dim,
                        const MaximizeBudget& budget, std::uint64_t seed) {
  budget.validate();
  Counted counted(f);
  SobolStream stream(dim, seed);
  const Matrix raw = stream.draw(static_cast<std::size_t>(budget.raw_candidates));
  std::vector<double> values(static_cast<std::size_t>(raw.rows()));
  std::size_t non_finite = 0;
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    values[static_cast<std::size_t>(i)] = counted(raw.row(i).transpose());
    if (values[static_cast<std::size_t>(i)] == kNegInf) ++non_finite;
  }
  if (non_finite == values.size()) {
    throw OptimizationError("maximize: acquisition non-finite at every raw candidate", values.size(),
                            non_finite);
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  Vector best = raw.row(static_cast<Eigen::Index>(order[0])).transpose();
  double best_value = values[order[0]];
  const double best_raw = best_value;
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(budget.refine_starts), order.size());
  for (std::size_t s = 0; s < starts; ++s) {
    const std::size_t i = order[s];
    if (values[i] == kNegInf) break;
    Vector x = raw.row(static_cast<Eigen::Index>(i)).transpose();
    double fx = values[i];
    refine(counted, x, fx, budget);
    if (fx > best_value) {
      best = x;
      best_value = fx;
    }
  }
  return {best, best_value, best_raw, counted.count()};
}

MaximizeResult maximize(const acq::AcquisitionKind& kind, const gp::GpModel& model,
                        const acq::ReferenceSet& refset, const Bounds& bounds, double theta,
                        const MaximizeBudget& budget, std::uint64_t seed, SobolStream* quasi_random) {
  if (kind.tag() == acq::AcquisitionTag::kQuasiRandom) {
    if (quasi_random == nullptr) throw ConfigError("maximize: QuasiRandom needs a Sobol stream");
    if (quasi_random->dim() != bounds.dim()) throw ConfigError("maximize: Sobol stream dimension mismatch");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {bounds.from_unit(quasi_random->next()), nan, nan, 0};
  }
  if (!(bounds == model.bounds())) throw ConfigError("maximize: bounds differ from the model's");
  if (kind.is_global() && refset.size() == 0) throw ConfigError("maximize: empty reference set");

  const gp::QueryCache cache =
      model.cache(kind.is_global() ? refset.points : Matrix(0, static_cast<Eigen::Index>(bounds.dim())));
  const double c = refset.volume_constant;
  PosteriorQuery q;
  auto f = [&](const Vector& u) {
    try {
      cache.evaluate(bounds.from_unit(u), q);
      return acq::evaluate(kind, q, theta, c);
    } catch (const NumericError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  MaximizeResult r = maximize(f, bounds.dim(), budget, seed);
  r.point = bounds.project(bounds.from_unit(r.point));
  return r;
}

}  // namespace lse::optim
