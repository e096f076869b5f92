#include "lse/gp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>

#include "lse/gp/elbo.hpp"
#include "lse/gp/kmeans.hpp"

namespace lse::gp {
namespace {

class NegativeElbo final : public ceres::FirstOrderFunction {
 public:
  explicit NegativeElbo(const ElboObjective& objective) : objective_(objective) {}

  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    const Vector params = Eigen::Map<const Vector>(parameters, objective_.num_parameters());
    Vector grad;
    const double value = objective_.value(params, gradient != nullptr ? &grad : nullptr);
    if (!std::isfinite(value)) return false;
    *cost = -value;
    if (gradient != nullptr) {
      if (!grad.allFinite()) return false;
      Eigen::Map<Vector>(gradient, grad.size()) = -grad;
    }
    return true;
  }

  int NumParameters() const override { return static_cast<int>(objective_.num_parameters()); }

 private:
  const ElboObjective& objective_;
};

Matrix unit_points(const Dataset& data) {
  Matrix u(data.points().rows(), data.points().cols());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    u.row(i) = data.bounds().to_unit(data.points().row(i).transpose()).transpose();
  }
  return u;
}

}  // namespace

void SurrogateConfig::validate() const {
  if (max_inducing < 1) throw ConfigError("surrogate.max_inducing must be >= 1");
  if (max_iterations < 0) throw ConfigError("surrogate.max_iterations must be >= 0");
  if (!(relative_tolerance >= 0.0)) throw ConfigError("surrogate.relative_tolerance must be >= 0");
  if (kmeans_restarts < 1) throw ConfigError("surrogate.kmeans_restarts must be >= 1");
  if (kmeans_max_iterations < 1) throw ConfigError("surrogate.kmeans_max_iterations must be >= 1");
  if (quadrature_nodes < 2) throw ConfigError("surrogate.quadrature_nodes must be >= 2");
  if (!(base_jitter > 0.0) || !(max_jitter >= base_jitter)) {
    throw ConfigError("surrogate jitter must satisfy 0 < base_jitter <= max_jitter");
  }
  if (!(prior.lengthscale_median > 0.0) || !(prior.outputscale_median > 0.0) ||
      !(prior.lengthscale_log_sd > 0.0) || !(prior.outputscale_log_sd > 0.0)) {
    throw ConfigError("surrogate hyperprior parameters must be positive");
  }
}

RefitMode refit_policy(int iteration, int period) {
  if (iteration < 1) throw ConfigError("refit_policy: iteration must be >= 1");
  if (period < 1) throw ConfigError("refit_policy: period must be >= 1");
  return iteration % period == 0 ? RefitMode::kFromScratch : RefitMode::kWarm;
}

GpModel fit(const Dataset& data, const SurrogateConfig& config, std::mt19937_64& rng,
            const GpModel* warm_start) {
  config.validate();
  if (data.empty()) throw ConfigError("fit: dataset is empty");
  if (warm_start != nullptr && !(warm_start->bounds() == data.bounds())) {
    throw ConfigError("fit: warm start model has different bounds");
  }

  Matrix inducing;
  if (warm_start != nullptr) {
    inducing = warm_start->inducing_unit();
  } else {
    const auto k = std::min<Eigen::Index>(config.max_inducing, static_cast<Eigen::Index>(data.size()));
    inducing = kmeans(unit_points(data), k, config.kmeans_restarts, config.kmeans_max_iterations, rng);
  }

  const ElboObjective objective(data, inducing, config);
  Vector params = warm_start != nullptr ? objective.pack(*warm_start) : objective.initial_parameters();
  const double initial = objective.value(params);
  const double initial_jitter = objective.last_jitter();

  FitDiagnostics diag;
  diag.from_scratch = warm_start == nullptr;
  if (!std::isfinite(initial)) {
    diag.termination = "non-finite ELBO at the starting point";
    throw FitError("fit: " + diag.termination, diag);
  }

  Vector best = params;
  if (config.max_iterations > 0) {
    ceres::GradientProblemSolver::Options options;
    options.line_search_direction_type = ceres::LBFGS;
    options.max_num_iterations = config.max_iterations;
    options.function_tolerance = config.relative_tolerance;
    options.gradient_tolerance = 1e-8;
    options.parameter_tolerance = 1e-10;
    options.logging_type = ceres::SILENT;
    options.minimizer_progress_to_stdout = false;
    ceres::GradientProblemSolver::Summary summary;
    ceres::GradientProblem problem(new NegativeElbo(objective));
    ceres::Solve(options, problem, params.data(), &summary);
    diag.iterations = static_cast<int>(summary.iterations.size());
    diag.termination = summary.message;
    best = params;
  } else {
    diag.termination = "no optimization requested";
  }

  double final_value = objective.value(best);
  double jitter = objective.last_jitter();
  if (!std::isfinite(final_value) || final_value < initial) {
    best = warm_start != nullptr ? objective.pack(*warm_start) : objective.initial_parameters();
    final_value = initial;
    jitter = initial_jitter;
    diag.termination += " (kept starting point)";
  }
  diag.elbo = final_value;
  diag.jitter = jitter;
  try {
    return objective.unpack(best, diag);
  } catch (const NumericError& e) {
    throw FitError(std::string("fit: ") + e.what(), diag);
  }
}

double evaluate_elbo(const GpModel& model, const Dataset& data, const SurrogateConfig& config) {
  const ElboObjective objective(data, model.inducing_unit(), config);
  return objective.value(objective.pack(model));
}

}  // namespace lse::gp
