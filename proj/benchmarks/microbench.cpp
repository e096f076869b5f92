#include <random>

#include <benchmark/benchmark.h>

#include "lse/acquisition.hpp"
#include "lse/gp/fit.hpp"
#include "lse/lookahead.hpp"
#include "lse/optim/maximize.hpp"
#include "lse/optim/sobol.hpp"
#include "lse/problems.hpp"
#include "lse/specfun.hpp"

using namespace lse;

namespace {

gp::Dataset sample_data(const problems::Problem& p, int n, std::uint64_t seed) {
  optim::SobolStream design(p.dim(), seed);
  std::mt19937_64 rng(seed + 1);
  gp::Dataset data(p.bounds);
  for (int i = 0; i < n; ++i) {
    const Vector x = p.bounds.from_unit(design.next());
    data.append(x, problems::sample(p, x, rng));
  }
  return data;
}

const gp::GpModel& fitted_model() {
  static const gp::GpModel model = [] {
    const auto& p = problems::get_problem("discrim_lowdim");
    std::mt19937_64 rng(3);
    return gp::fit(sample_data(p, 150, 2), gp::SurrogateConfig{}, rng);
  }();
  return model;
}

void BM_NormalCdf(benchmark::State& state) {
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::normal_cdf(x));
    x = x > 3.0 ? -3.0 : x + 0.001;
  }
}
BENCHMARK(BM_NormalCdf);

void BM_OwensT(benchmark::State& state) {
  double h = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::owens_t(h, 0.7));
    h = h > 3.0 ? -3.0 : h + 0.001;
  }
}
BENCHMARK(BM_OwensT);

void BM_BvnCdf(benchmark::State& state) {
  const specfun::BvnCorrelation rho(static_cast<double>(state.range(0)) / 100.0);
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bvn_cdf(x, 0.3, rho));
    x = x > 3.0 ? -3.0 : x + 0.001;
  }
}
BENCHMARK(BM_BvnCdf)->Arg(-90)->Arg(30)->Arg(95);

void BM_LookaheadPosteriors(benchmark::State& state) {
  double mu = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lookahead_posteriors({mu, 1.0, 0.3, 0.8, 0.5}, 0.2));
    mu = mu > 2.0 ? -2.0 : mu + 0.001;
  }
}
BENCHMARK(BM_LookaheadPosteriors);

void BM_GlobalAcquisition(benchmark::State& state) {
  const auto tag = static_cast<acq::AcquisitionTag>(state.range(0));
  const auto& model = fitted_model();
  const auto g = acq::ReferenceSet::generate(model.bounds(), 500, 4);
  const gp::QueryCache cache = model.cache(g.points);
  const acq::AcquisitionKind kind(tag);
  Vector x{{0.1, -0.2}};
  PosteriorQuery q;
  for (auto _ : state) {
    cache.evaluate(x, q);
    benchmark::DoNotOptimize(acq::evaluate(kind, q, 0.75, g.volume_constant));
  }
  state.SetLabel(std::string(kind.name()));
}
BENCHMARK(BM_GlobalAcquisition)
    ->Arg(static_cast<int>(acq::AcquisitionTag::kGlobalMI))
    ->Arg(static_cast<int>(acq::AcquisitionTag::kGlobalSUR))
    ->Arg(static_cast<int>(acq::AcquisitionTag::kEAVC));

void BM_Fit(benchmark::State& state) {
  const auto& p = problems::get_problem("discrim_lowdim");
  const gp::Dataset data = sample_data(p, static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    std::mt19937_64 rng(6);
    benchmark::DoNotOptimize(gp::fit(data, gp::SurrogateConfig{}, rng));
  }
}
BENCHMARK(BM_Fit)->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

void BM_MaximizeGlobalMI(benchmark::State& state) {
  const auto& model = fitted_model();
  const auto g = acq::ReferenceSet::generate(model.bounds(), 500, 4);
  const acq::AcquisitionKind kind(acq::AcquisitionTag::kGlobalMI);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(optim::maximize(kind, model, g, model.bounds(), 0.75, optim::MaximizeBudget{}, seed++));
  }
}
BENCHMARK(BM_MaximizeGlobalMI)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
