#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "lse/error.hpp"
#include "lse/gp/checkpoint.hpp"
#include "lse/gp/elbo.hpp"
#include "lse/gp/fit.hpp"
#include "lse/gp/kmeans.hpp"
#include "lse/random.hpp"
#include "lse/specfun.hpp"

using namespace lse;
using namespace lse::gp;

namespace {

Dataset random_dataset(std::size_t n, std::uint64_t seed, const Bounds& b) {
  std::mt19937_64 rng(seed);
  Dataset data(b);
  for (std::size_t i = 0; i < n; ++i) {
    Vector u(static_cast<Eigen::Index>(b.dim()));
    for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = uniform01(rng);
    const Vector x = b.from_unit(u);
    const double p = specfun::normal_cdf(2.0 * std::sin(3.0 * x[0]) + (x.size() > 1 ? x[1] : 0.0));
    data.append(x, uniform01(rng) < p);
  }
  return data;
}

// A model with random (but valid) variational state.
GpModel random_model(std::uint64_t seed, Eigen::Index m, double lengthscale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  Matrix z(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) z.row(i) << uniform01(rng), uniform01(rng);
  Vector mean(m);
  for (auto& v : mean) v = n01(rng);
  Matrix c = Matrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    c(j, j) = 0.2 + uniform01(rng);
    for (Eigen::Index i = j + 1; i < m; ++i) c(i, j) = 0.3 * n01(rng);
  }
  return GpModel(Bounds::uniform(2, -1.0, 1.0), z, KernelParams{Vector::Constant(2, lengthscale), 2.0},
                 mean, c);
}

double z_mean(double mu, double var) { return specfun::normal_cdf(mu / std::sqrt(1.0 + var)); }

}  // namespace

TEST(Dataset, ValidatesPointsAndOutcomes) {
  Dataset d(Bounds::uniform(2, 0.0, 1.0));
  d.append(Vector::Constant(2, 0.5), 1);
  EXPECT_EQ(d.size(), 1u);
  EXPECT_THROW(d.append(Vector::Constant(2, 1.5), 0), DomainError);
  EXPECT_THROW(d.append(Vector::Constant(3, 0.5), 0), DomainError);
  EXPECT_THROW(d.append(Vector::Constant(2, 0.5), 2), DomainError);
}

TEST(Kernel, ValidatesParameters) {
  EXPECT_NO_THROW((KernelParams{Vector::Constant(2, 0.3), 1.0}.validate()));
  EXPECT_THROW((KernelParams{Vector::Constant(2, -0.3), 1.0}.validate()), DomainError);
  EXPECT_THROW((KernelParams{Vector::Constant(2, 0.3), 0.0}.validate()), DomainError);
}

TEST(RefitPolicy, EveryTenthIterationFromScratch) {
  EXPECT_EQ(refit_policy(10), RefitMode::kFromScratch);
  EXPECT_EQ(refit_policy(7), RefitMode::kWarm);
  EXPECT_EQ(refit_policy(20), RefitMode::kFromScratch);
  EXPECT_EQ(refit_policy(1), RefitMode::kWarm);
  EXPECT_THROW(refit_policy(0), ConfigError);
}

TEST(GpModel, PriorHasZeroMean) {
  Matrix z(3, 2);
  z << 0.1, 0.2, 0.5, 0.5, 0.9, 0.3;
  const GpModel m = GpModel::prior(Bounds::uniform(2, -1.0, 1.0), z, KernelParams{Vector::Constant(2, 0.3), 1.5});
  Matrix q(4, 2);
  q << -1, -1, 0, 0, 0.3, -0.7, 1, 1;
  const PosteriorQuery p = m.posterior(q, Vector::Constant(2, 0.25));
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    EXPECT_EQ(p.mu_q[i], 0.0);
    EXPECT_NEAR(p.var_q[i], 1.5, 1e-8);
  }
  EXPECT_EQ(p.mu_star, 0.0);
}

TEST(GpModel, QueryAtCandidateGivesExactVariance) {
  const GpModel m = random_model(1, 12, 0.3);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const Vector x = m.bounds().from_unit(Vector{{uniform01(rng), uniform01(rng)}});
    const PosteriorQuery p = m.posterior(x.transpose(), x);
    EXPECT_EQ(p.cov_qstar[0], p.var_star);
    EXPECT_EQ(p.var_q[0], p.var_star);
    EXPECT_EQ(p.mu_q[0], p.mu_star);
  }
}

TEST(GpModel, DistantPointsAreUncorrelated) {
  const GpModel m = random_model(3, 15, 0.02);
  const Vector a{{-0.9, -0.9}};
  const Vector b{{0.9, 0.9}};
  const PosteriorQuery p = m.posterior(a.transpose(), b);
  EXPECT_LE(std::abs(p.cov_qstar[0]), 1e-6 * std::sqrt(p.var_q[0] * p.var_star));
}

TEST(GpModel, CovarianceIsBoundedBySd) {
  const GpModel m = random_model(4, 10, 0.4);
  std::mt19937_64 rng(5);
  Matrix q(200, 2);
  for (Eigen::Index i = 0; i < q.rows(); ++i) q.row(i) << 2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1;
  for (int t = 0; t < 20; ++t) {
    const Vector x{{2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1}};
    const PosteriorQuery p = m.posterior(q, x);
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      EXPECT_GE(p.var_q[i], 0.0);
      EXPECT_LE(std::abs(p.cov_qstar[i]), std::sqrt(p.var_q[i] * p.var_star) + 1e-9);
    }
  }
}

TEST(GpModel, JointCovarianceIsSymmetricPsd) {
  const GpModel m = random_model(6, 10, 0.3);
  std::mt19937_64 rng(7);
  const int n = 30;
  std::vector<Vector> pts;
  for (int i = 0; i < n; ++i) pts.push_back(Vector{{2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1}});
  Matrix cov(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) cov(i, j) = m.covariance(pts[i], pts[j]);
  }
  EXPECT_LE((cov - cov.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-8);
}

TEST(GpModel, MarginalsAgreeAcrossEntryPoints) {
  const GpModel m = random_model(8, 10, 0.3);
  Matrix q(5, 2);
  q << -1, -1, -0.2, 0.4, 0.3, 0.3, 0.9, -0.5, 1, 1;
  const LatentMarginals lm = m.marginals(q);
  const PosteriorQuery p = m.posterior(q, Vector::Zero(2));
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    EXPECT_NEAR(lm.mean[i], p.mu_q[i], 1e-12);
    EXPECT_NEAR(lm.var[i], p.var_q[i], 1e-12);
    EXPECT_NEAR(m.covariance(q.row(i).transpose(), q.row(i).transpose()), p.var_q[i], 1e-12);
  }
}

TEST(GpModel, RejectsPointsOutsideBounds) {
  const GpModel m = random_model(9, 5, 0.3);
  EXPECT_THROW(m.posterior(Vector{{0.0, 1.5}}.transpose(), Vector::Zero(2)), DomainError);
  EXPECT_THROW(m.posterior(Vector::Zero(2).transpose(), Vector{{-2.0, 0.0}}), DomainError);
}

TEST(Kmeans, DeduplicatesAndClamps) {
  Matrix pts(5, 2);
  pts << 0, 0, 0, 0, 1, 1, 1, 1, 0.5, 0.5;
  std::mt19937_64 rng(1);
  EXPECT_EQ(kmeans(pts, 10, 3, 50, rng).rows(), 3);
  const Matrix c = kmeans(pts, 3, 5, 50, rng);
  EXPECT_EQ(c.rows(), 3);
}

TEST(Kmeans, DeterministicGivenSeed) {
  std::mt19937_64 g(4);
  Matrix pts(200, 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) pts.row(i) << uniform01(g), uniform01(g), uniform01(g);
  std::mt19937_64 r1(9), r2(9);
  EXPECT_EQ(kmeans(pts, 20, 10, 100, r1), kmeans(pts, 20, 10, 100, r2));
}

TEST(Elbo, GradientMatchesFiniteDifferences) {
  const Dataset data = random_dataset(40, 3, Bounds::uniform(2, -1.0, 1.0));
  std::mt19937_64 rng(5);
  Matrix z(6, 2);
  for (Eigen::Index i = 0; i < z.rows(); ++i) z.row(i) << uniform01(rng), uniform01(rng);
  const SurrogateConfig cfg;
  const ElboObjective obj(data, z, cfg);
  Vector p = obj.initial_parameters();
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] += 0.3 * (uniform01(rng) - 0.5);
  Vector g;
  obj.value(p, &g);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Vector hi = p, lo = p;
    hi[i] += 1e-5;
    lo[i] -= 1e-5;
    const double fd = (obj.value(hi) - obj.value(lo)) / 2e-5;
    EXPECT_NEAR(g[i], fd, 1e-5 * (1.0 + std::abs(fd))) << "parameter " << i;
  }
}

TEST(Elbo, PackUnpackRoundTrip) {
  const Dataset data = random_dataset(30, 4, Bounds::uniform(2, -1.0, 1.0));
  std::mt19937_64 rng(6);
  const GpModel m = fit(data, SurrogateConfig{}, rng);
  const ElboObjective obj(data, m.inducing_unit(), SurrogateConfig{});
  EXPECT_NEAR(obj.value(obj.pack(m)), m.diagnostics().elbo, 1e-9);
}

TEST(Fit, AllPositiveEvidenceRaisesCentroid) {
  const Bounds b = Bounds::uniform(2, 0.0, 1.0);
  Dataset data(b);
  std::mt19937_64 g(1);
  for (int i = 0; i < 10; ++i) data.append(Vector{{0.3 + 0.4 * uniform01(g), 0.3 + 0.4 * uniform01(g)}}, 1);
  std::mt19937_64 rng(2);
  const GpModel m = fit(data, SurrogateConfig{}, rng);
  const Vector centroid = data.points().colwise().mean().transpose();
  const LatentMarginals lm = m.marginals(centroid.transpose());
  EXPECT_GT(z_mean(lm.mean[0], lm.var[0]), 0.5);
}

TEST(Fit, InducingCountClampedToData) {
  const Dataset data = random_dataset(2, 7, Bounds::uniform(2, 0.0, 1.0));
  std::mt19937_64 rng(1);
  EXPECT_EQ(fit(data, SurrogateConfig{}, rng).num_inducing(), 2);
  const Dataset big = random_dataset(150, 8, Bounds::uniform(2, 0.0, 1.0));
  EXPECT_EQ(fit(big, SurrogateConfig{}, rng).num_inducing(), 100);
}

TEST(Fit, WarmStartNeverLosesElbo) {
  const Bounds b = Bounds::uniform(2, -1.0, 1.0);
  const Dataset data = random_dataset(60, 9, b);
  std::mt19937_64 rng(3);
  SurrogateConfig short_run;
  short_run.max_iterations = 5;
  const GpModel rough = fit(data, short_run, rng);
  const GpModel warm = fit(data, SurrogateConfig{}, rng, &rough);
  EXPECT_GE(warm.diagnostics().elbo, evaluate_elbo(rough, data, SurrogateConfig{}) - 1e-6);
  EXPECT_FALSE(warm.diagnostics().from_scratch);
}

TEST(Fit, WarmAndScratchReachSimilarElbo) {
  const Bounds b = Bounds::uniform(2, -1.0, 1.0);
  const Dataset all = random_dataset(60, 10, b);
  const Dataset head(b, all.points().topRows(50),
                     std::vector<std::uint8_t>(all.outcomes().begin(), all.outcomes().begin() + 50));
  std::mt19937_64 rng(4);
  const GpModel prev = fit(head, SurrogateConfig{}, rng);
  const GpModel warm = fit(all, SurrogateConfig{}, rng, &prev);
  const GpModel scratch = fit(all, SurrogateConfig{}, rng);
  // Both runs place inducing points on the data (m = n here), so they
  // optimize the same objective up to inducing-point choice.
  EXPECT_NEAR(warm.diagnostics().elbo, scratch.diagnostics().elbo, 1e-2);
}

TEST(Fit, RecoversSmoothOneDimensionalProbability) {
  const Bounds b = Bounds::uniform(1, -1.0, 1.0);
  Dataset data(b);
  std::mt19937_64 g(21);
  auto truth = [](double x) { return specfun::normal_cdf(1.5 * std::sin(3.0 * x)); };
  for (int i = 0; i < 200; ++i) {
    const double x = -1.0 + 2.0 * uniform01(g);
    data.append(Vector{{x}}, uniform01(g) < truth(x));
  }
  std::mt19937_64 rng(1);
  const GpModel m = fit(data, SurrogateConfig{}, rng);
  Matrix grid(101, 1);
  for (int i = 0; i <= 100; ++i) grid(i, 0) = -1.0 + 0.02 * i;
  const LatentMarginals lm = m.marginals(grid);
  double sse = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double e = z_mean(lm.mean[i], lm.var[i]) - truth(grid(i, 0));
    sse += e * e;
  }
  EXPECT_LT(std::sqrt(sse / 101.0), 0.15);
}

TEST(Fit, InsensitiveToObservationOrder) {
  const Bounds b = Bounds::uniform(2, -1.0, 1.0);
  const Dataset data = random_dataset(50, 11, b);
  std::vector<Eigen::Index> perm(50);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  Matrix pts(50, 2);
  std::vector<std::uint8_t> ys(50);
  for (Eigen::Index i = 0; i < 50; ++i) {
    pts.row(i) = data.points().row(perm[i]);
    ys[i] = data.outcomes()[perm[i]];
  }
  const Dataset shuffled(b, pts, ys);
  std::mt19937_64 r1(5), r2(5);
  const GpModel a = fit(data, SurrogateConfig{}, r1);
  const GpModel c = fit(shuffled, SurrogateConfig{}, r2);
  Matrix q(9, 2);
  q << -0.8, -0.8, -0.8, 0, -0.8, 0.8, 0, -0.8, 0, 0, 0, 0.8, 0.8, -0.8, 0.8, 0, 0.8, 0.8;
  const LatentMarginals ma = a.marginals(q);
  const LatentMarginals mc = c.marginals(q);
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    EXPECT_NEAR(z_mean(ma.mean[i], ma.var[i]), z_mean(mc.mean[i], mc.var[i]), 1e-3);
  }
}

TEST(Fit, RejectsEmptyData) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(fit(Dataset(Bounds::uniform(2, 0.0, 1.0)), SurrogateConfig{}, rng), ConfigError);
}

TEST(Checkpoint, RoundTripIsExact) {
  const Dataset data = random_dataset(40, 12, Bounds::uniform(2, -1.0, 1.0));
  std::mt19937_64 rng(2);
  const GpModel m = fit(data, SurrogateConfig{}, rng);
  const GpModel r = from_checkpoint(to_checkpoint(m));
  EXPECT_EQ(r.variational_mean(), m.variational_mean());
  EXPECT_EQ(r.variational_chol(), m.variational_chol());
  EXPECT_EQ(r.inducing_unit(), m.inducing_unit());
  EXPECT_EQ(r.kernel().lengthscales, m.kernel().lengthscales);
  EXPECT_EQ(r.jitter(), m.jitter());
  EXPECT_EQ(r.diagnostics().elbo, m.diagnostics().elbo);
  ASSERT_TRUE(r.data().has_value());
  EXPECT_EQ(r.data()->outcomes(), data.outcomes());
  Matrix q(3, 2);
  q << -0.5, 0.2, 0.1, 0.9, 0.7, -0.3;
  const PosteriorQuery a = m.posterior(q, Vector::Zero(2));
  const PosteriorQuery b = r.posterior(q, Vector::Zero(2));
  EXPECT_EQ(a.mu_q, b.mu_q);
  EXPECT_EQ(a.var_q, b.var_q);
  EXPECT_EQ(a.cov_qstar, b.cov_qstar);
}

TEST(Checkpoint, RejectsWrongVersionOrGarbage) {
  const GpModel m = random_model(1, 4, 0.3);
  std::string text = to_checkpoint(m);
  const auto pos = text.find("\"version\": 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 12, "\"version\": 9");
  EXPECT_THROW(from_checkpoint(text), ConfigError);
  EXPECT_THROW(from_checkpoint("{not json"), ConfigError);
}
