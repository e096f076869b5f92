// lse_bench: run, aggregate and inspect level-set benchmark campaigns.
//
// Exit codes: 0 success, 1 config error, 2 numeric failure (or every
// replication failed), 3 some replications failed.

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "lse/acquisition.hpp"
#include "lse/bench/runner.hpp"
#include "lse/error.hpp"
#include "lse/lookahead.hpp"
#include "lse/problems.hpp"
#include "lse/specfun.hpp"
#include "oracles.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumeric = 2, kPartial = 3 };

void print_summary(const lse::bench::RunSummary& s) {
  const auto& a = s.aggregate;
  fmt::print("{}: {} completed, {} failed\n", s.directory.string(), s.completed, s.failed);
  fmt::print("final brier       {:.5f} +- {:.5f}\n", a.final_brier.mean, a.final_brier.two_sem);
  fmt::print("final class error {:.5f} +- {:.5f}\n", a.final_class_error.mean, a.final_class_error.two_sem);
  fmt::print("edge sample rate  {:.4f} +- {:.4f}\n", a.edge_rate.mean, a.edge_rate.two_sem);
}

int run_command(const std::string& config_path, std::optional<int> reps, std::optional<int> workers,
                bool quiet) {
  const lse::bench::ExperimentConfig config = lse::bench::load_config(config_path);
  const auto s = lse::bench::run_benchmark(config, reps, workers, quiet ? nullptr : &std::cerr);
  print_summary(s);
  if (s.completed == 0) return kNumeric;
  return s.failed > 0 ? kPartial : kOk;
}

int aggregate_command(const std::string& dir) {
  const auto a = lse::bench::aggregate_directory(dir);
  fmt::print("{}: {} replications ({} failed), {} scored iterations\n", dir, a.replications, a.failed,
             a.rows.size());
  fmt::print("final brier {:.5f} +- {:.5f}\n", a.final_brier.mean, a.final_brier.two_sem);
  return kOk;
}

int list_problems() {
  for (const auto& name : lse::problems::problem_names()) {
    const auto& p = lse::problems::get_problem(name);
    fmt::print("{:<18} dim={} theta={} 2afc={}\n", name, p.dim(), p.theta, p.two_afc ? "yes" : "no");
  }
  for (auto tag : lse::acq::all_acquisition_tags()) fmt::print("acquisition {}\n", lse::acq::to_string(tag));
  return kOk;
}

// Quick versions of the oracle suites.
int selftest() {
  using namespace lse;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int failures = 0;
  const auto report = [&](const char* name, double err, double tol) {
    const bool ok = err <= tol;
    failures += ok ? 0 : 1;
    fmt::print("{:<32} {:>10.3e}  tol {:.0e}  {}\n", name, err, tol, ok ? "ok" : "FAIL");
  };

  double owen = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double h = -6 + 12 * u(rng), a = -10 + 20 * u(rng);
    owen = std::max(owen, std::abs(specfun::owens_t(h, a) - oracle::owens_t(h, a)));
    owen = std::max(owen, std::abs(specfun::owens_t(0.0, a) - std::atan(a) / (2 * std::numbers::pi)));
  }
  report("owens_t vs quadrature", owen, 1e-10);

  double bvn = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = -5 + 10 * u(rng), y = -5 + 10 * u(rng), rho = -0.999 + 1.998 * u(rng);
    bvn = std::max(bvn, std::abs(specfun::bvn_cdf(x, y, specfun::BvnCorrelation(rho)) - oracle::bvn(x, y, rho)));
  }
  report("bvn_cdf vs quadrature", bvn, 5e-8);

  double tower = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double vq = 0.01 + 4 * u(rng), vs = 0.01 + 4 * u(rng);
    const PairPosterior p{-3 + 6 * u(rng), vq, -3 + 6 * u(rng), vs, (2 * u(rng) - 1) * std::sqrt(vq * vs)};
    const auto r = lookahead_posteriors(p, -1 + 2 * u(rng));
    tower = std::max(tower, std::abs(r.p1 * r.pi1 + (1 - r.p1) * r.pi0 - r.pi));
  }
  report("look-ahead tower property", tower, 5e-8);

  const auto mc = oracle::z_moments_mc(0.4, 1.3, 1'000'000, 2);
  const ZMoments m = z_moments(0.4, 1.3);
  report("z moments vs MC (SE units)",
         std::max(std::abs(m.mean - mc.mean.value) / mc.mean.se,
                  std::abs(m.variance - mc.variance.value) / mc.variance.se),
         3.0);

  const auto post = oracle::lookahead_mc(0.2, 1.0, -0.3, 0.8, 0.6, 0.5, 1'000'000, 3);
  const auto r = lookahead_posteriors({0.2, 1.0, -0.3, 0.8, 0.6}, 0.5);
  report("posteriors vs MC (SE units)",
         std::max(std::abs(r.pi1 - post.pi1.value) / post.pi1.se, std::abs(r.pi0 - post.pi0.value) / post.pi0.se),
         3.0);

  report("local MI vs quadrature",
         std::abs(acq::local_mi(0.0, 1.0, 0.674) - oracle::local_mi_quadrature(0.0, 1.0, 0.674)), 1e-6);

  double problems_err = 0.0;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> x2{-1 + 2 * u(rng), -1 + 2 * u(rng)};
    std::vector<double> x8(8);
    for (auto& v : x8) v = -1 + 2 * u(rng);
    std::vector<double> x6(6);
    for (auto& v : x6) v = u(rng);
    problems_err = std::max(problems_err, std::abs(problems::discrim_2d(Vector::Map(x2.data(), 2)) - oracle::discrim_2d(x2)));
    problems_err = std::max(problems_err, std::abs(problems::discrim_8d(Vector::Map(x8.data(), 8)) - oracle::discrim_8d(x8)));
    problems_err = std::max(problems_err,
                            std::abs(problems::binarized_hartmann6(Vector::Map(x6.data(), 6)) - oracle::hartmann6_binary(x6)));
  }
  report("test problems vs transcription", problems_err, 1e-13);

  fmt::print("{}\n", failures == 0 ? "selftest passed" : "selftest FAILED");
  return failures == 0 ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-set estimation benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> reps, workers;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run every replication of an experiment config");
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--reps", reps, "Override the replication count")->check(CLI::PositiveNumber);
  run->add_option("--workers", workers, "Concurrent replications")->check(CLI::PositiveNumber);
  run->add_flag("-q,--quiet", quiet, "No progress lines");

  std::string dir;
  auto* agg = app.add_subcommand("aggregate", "Recompute aggregate outputs of a run directory");
  agg->add_option("dir", dir, "Run directory")->required()->check(CLI::ExistingDirectory);

  auto* list = app.add_subcommand("list-problems", "List built-in problems and acquisitions");
  auto* self = app.add_subcommand("selftest", "Check the numerics against slow reference oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return run_command(config_path, reps, workers, quiet);
    if (*agg) return aggregate_command(dir);
    if (*list) return list_problems();
    if (*self) return selftest();
  } catch (const lse::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const lse::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const lse::DomainError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
