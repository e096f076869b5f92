#include "lse/bench/experiment.hpp"

#include <chrono>

#include "lse/bench/metrics.hpp"
#include "lse/gp/fit.hpp"
#include "lse/lookahead.hpp"
#include "lse/optim/maximize.hpp"
#include "lse/optim/sobol.hpp"
#include "lse/problems.hpp"
#include "lse/random.hpp"

namespace lse::bench {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

Matrix RunTrace::active_points() const {
  const auto d = static_cast<Eigen::Index>(bounds.dim());
  std::vector<const IterationRecord*> active;
  for (const auto& r : records) {
    if (r.active) active.push_back(&r);
  }
  Matrix m(static_cast<Eigen::Index>(active.size()), d);
  for (std::size_t i = 0; i < active.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = active[i]->point.transpose();
  return m;
}

double RunTrace::edge_rate() const { return edge_sample_rate(active_points(), bounds); }

const IterationRecord* RunTrace::last_scored() const {
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->has_metrics()) return &*it;
  }
  return nullptr;
}

RunTrace run_experiment(const ExperimentConfig& config, int replication) {
  config.validate();
  const problems::Problem& problem = problems::get_problem(config.problem);
  const acq::AcquisitionKind kind = config.kind();
  const double theta = config.resolved_theta();
  const double gamma = latent_threshold(theta);
  const std::uint64_t base = config.seed;
  const auto rep = static_cast<std::uint64_t>(replication);
  const Bounds& bounds = problem.bounds;

  RunTrace trace;
  trace.replication = replication;
  trace.bounds = bounds;

  optim::SobolStream design(problem.dim(), derive_seed(base, rep, StreamId::kDesign));
  std::mt19937_64 outcomes = make_rng(derive_seed(base, rep, StreamId::kOutcomes));
  std::mt19937_64 fit_rng = make_rng(derive_seed(base, rep, StreamId::kFit));
  const TestSet test = TestSet::generate(problem, theta, static_cast<std::size_t>(config.test_set_size),
                                         derive_seed(base, rep, StreamId::kTestSet));

  gp::Dataset data(bounds);
  auto observe = [&](const Vector& x, bool active) {
    IterationRecord r;
    r.iteration = static_cast<int>(data.size()) + 1;
    r.active = active;
    r.point = x;
    r.outcome = problems::sample(problem, x, outcomes);
    r.edge = is_edge_point(x, bounds);
    data.append(x, r.outcome);
    trace.records.push_back(std::move(r));
  };
  auto score = [&](const gp::GpModel& model, IterationRecord& r) {
    const Vector probs = level_set_probabilities(model, test.points, gamma);
    r.brier = brier(probs, test.truth_below);
    r.class_error = expected_classification_error(probs, test.truth_below);
  };

  const int n0 = config.initial_design_size;
  std::optional<gp::GpModel> model;
  int stage = n0;
  try {
    for (int i = 0; i < n0; ++i) observe(bounds.from_unit(design.next()), false);
    auto t0 = Clock::now();
    model = gp::fit(data, config.surrogate, fit_rng);
    trace.records.back().fit_seconds = seconds_since(t0);
    score(*model, trace.records.back());

    for (int i = n0 + 1; i <= config.total_iterations; ++i) {
      stage = i;
      const int k = i - n0;
      const auto uk = static_cast<std::uint64_t>(k);
      t0 = Clock::now();
      acq::ReferenceSet refset;
      if (kind.is_global()) {
        refset = acq::ReferenceSet::generate(bounds, static_cast<std::size_t>(config.reference_set_size),
                                             derive_seed(base, rep, StreamId::kReferenceSet, uk));
      }
      const optim::MaximizeResult choice =
          optim::maximize(kind, *model, refset, bounds, theta, config.optimizer,
                          derive_seed(base, rep, StreamId::kCandidates, uk), &design);
      const double acq_seconds = seconds_since(t0);
      observe(choice.point, true);
      IterationRecord& r = trace.records.back();
      r.acquisition_seconds = acq_seconds;
      r.acquisition_value = choice.value;

      t0 = Clock::now();
      const bool scratch = gp::refit_policy(k, config.refit_every) == gp::RefitMode::kFromScratch;
      model = gp::fit(data, config.surrogate, fit_rng, scratch ? nullptr : &*model);
      r.fit_seconds = seconds_since(t0);
      score(*model, r);
    }
  } catch (const NumericError& e) {
    trace.failed = true;
    trace.error_iteration = stage;
    trace.error = e.what();
  } catch (const DomainError& e) {
    trace.failed = true;
    trace.error_iteration = stage;
    trace.error = e.what();
  }
  trace.final_model = std::move(model);
  return trace;
}

}  // namespace lse::bench
