#pragma once

#include <cstdint>
#include <functional>

#include "lse/acquisition.hpp"
#include "lse/error.hpp"
#include "lse/gp/model.hpp"
#include "lse/optim/sobol.hpp"

namespace lse::optim {

class OptimizationError : public NumericError {
 public:
  OptimizationError(const std::string& what, std::size_t candidates, std::size_t non_finite)
      : NumericError(what), candidates_(candidates), non_finite_(non_finite) {}
  std::size_t candidates() const { return candidates_; }
  std::size_t non_finite() const { return non_finite_; }

 private:
  std::size_t candidates_;
  std::size_t non_finite_;
};

/// Multistart budget. Steps are in unit-cube coordinates, i.e. fractions of
/// each axis' range.
struct MaximizeBudget {
  int raw_candidates = 512;
  int refine_starts = 8;
  int refine_iterations = 32;
  double fd_step = 1e-4;
  double initial_step = 0.1;
  double max_step = 0.5;
  int max_backtracks = 6;

  void validate() const;
};

struct MaximizeResult {
  Vector point;  // original coordinates
  double value = 0.0;
  double best_raw_value = 0.0;
  std::size_t evaluations = 0;
};

/// Maximizes f over [0, 1]^d: scrambled-Sobol raw candidates, then projected
/// gradient ascent (central finite differences, one-sided at the faces) from
/// the best few. The result is never worse than the best raw candidate.
/// Throws OptimizationError if every raw value is non-finite.
MaximizeResult maximize(const std::function<double(const Vector&)>& f, std::size_t dim,
                        const MaximizeBudget& budget, std::uint64_t seed);

/// Acquisition maximization over `bounds`. QuasiRandom returns the next point
/// of `quasi_random` without touching the model (value is NaN); other kinds
/// never use it and it may be null.
MaximizeResult maximize(const acq::AcquisitionKind& kind, const gp::GpModel& model,
                        const acq::ReferenceSet& refset, const Bounds& bounds, double theta,
                        const MaximizeBudget& budget, std::uint64_t seed,
                        SobolStream* quasi_random = nullptr);

}  // namespace lse::optim
