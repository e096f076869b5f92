#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "lse/error.hpp"
#include "lse/optim/sobol.hpp"
#include "lse/random.hpp"

using namespace lse;
using optim::SobolStream;

TEST(Sobol, OneDimensionalUnscrambled) {
  SobolStream s(1);
  const Matrix m = s.draw(3);
  EXPECT_EQ(m(0, 0), 0.5);
  EXPECT_EQ(m(1, 0), 0.75);
  EXPECT_EQ(m(2, 0), 0.25);
  EXPECT_EQ(s.counter(), 3u);
}

TEST(Sobol, ThreeDimensionalMatchesDirectionNumbers) {
  SobolStream s(3);
  const Matrix m = s.draw(3);
  const double expected[3][3] = {{0.5, 0.5, 0.5}, {0.75, 0.25, 0.25}, {0.25, 0.75, 0.75}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), expected[i][j]);
  }
  EXPECT_EQ(s.next()[2], 0.625);
}

TEST(Sobol, StratifiesDyadicIntervals) {
  // With the origin put back, the first 2^k points hit every dyadic cell of
  // width 2^-k exactly once in each coordinate.
  SobolStream s(SobolStream::kMaxDim);
  Matrix m(64, SobolStream::kMaxDim);
  m.row(0).setZero();
  m.bottomRows(63) = s.draw(63);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    std::set<int> cells;
    for (Eigen::Index i = 0; i < 64; ++i) cells.insert(static_cast<int>(m(i, j) * 64));
    EXPECT_EQ(cells.size(), 64u) << "dim " << j;
  }
}

TEST(Sobol, ScrambledIsDeterministicAndInRange) {
  SobolStream a(4, 99);
  SobolStream b(4, 99);
  SobolStream c(4, 100);
  const Matrix ma = a.draw(256);
  EXPECT_EQ(ma, b.draw(256));
  EXPECT_NE(ma, c.draw(256));
  EXPECT_GE(ma.minCoeff(), 0.0);
  EXPECT_LT(ma.maxCoeff(), 1.0);
  EXPECT_TRUE(a.scrambled());
}

TEST(Sobol, ScrambledKeepsStratification) {
  SobolStream s(5, 1234);
  const Matrix m = s.draw(128);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    std::set<int> cells;
    for (Eigen::Index i = 0; i < m.rows(); ++i) cells.insert(static_cast<int>(m(i, j) * 128));
    EXPECT_EQ(cells.size(), 128u);
  }
}

TEST(Sobol, SampleMeanNearHalf) {
  SobolStream s(2, 7);
  const Matrix m = s.draw(512);
  EXPECT_NEAR(m.col(0).mean(), 0.5, 0.01);
  EXPECT_NEAR(m.col(1).mean(), 0.5, 0.01);
}

TEST(Sobol, BeatsIidOnTwoDimensionalDiscrepancy) {
  // Star discrepancy over anchored boxes on a 32 x 32 grid of corners.
  auto discrepancy = [](const Matrix& pts) {
    double worst = 0.0;
    for (int a = 1; a <= 32; ++a) {
      for (int b = 1; b <= 32; ++b) {
        const double u = a / 32.0;
        const double v = b / 32.0;
        int inside = 0;
        for (Eigen::Index i = 0; i < pts.rows(); ++i) inside += pts(i, 0) < u && pts(i, 1) < v;
        worst = std::max(worst, std::abs(static_cast<double>(inside) / pts.rows() - u * v));
      }
    }
    return worst;
  };
  SobolStream s(2);
  Matrix sobol(256, 2);
  sobol.row(0).setZero();
  sobol.bottomRows(255) = s.draw(255);
  std::mt19937_64 rng(3);
  Matrix iid(256, 2);
  for (Eigen::Index i = 0; i < iid.rows(); ++i) {
    iid(i, 0) = uniform01(rng);
    iid(i, 1) = uniform01(rng);
  }
  EXPECT_LT(discrepancy(sobol), discrepancy(iid));
}

TEST(Sobol, RejectsUnsupportedDimension) {
  EXPECT_THROW(SobolStream(0), ConfigError);
  EXPECT_THROW(SobolStream(SobolStream::kMaxDim + 1), ConfigError);
}

TEST(Random, DerivedSeedsAreDistinctAcrossStreams) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    for (auto id : {StreamId::kDesign, StreamId::kTestSet, StreamId::kOutcomes, StreamId::kFit,
                    StreamId::kReferenceSet, StreamId::kCandidates}) {
      for (std::uint64_t k = 0; k < 4; ++k) seeds.insert(derive_seed(42, rep, id, k));
    }
  }
  EXPECT_EQ(seeds.size(), 5u * 6u * 4u);
  EXPECT_EQ(derive_seed(1, 2, StreamId::kFit, 3), derive_seed(1, 2, StreamId::kFit, 3));
}

TEST(Random, TestSetStreamIsDisjointFromModelStreams) {
  EXPECT_NE(static_cast<int>(StreamId::kTestSet), static_cast<int>(StreamId::kDesign));
  EXPECT_NE(static_cast<int>(StreamId::kTestSet), static_cast<int>(StreamId::kCandidates));
  EXPECT_NE(static_cast<int>(StreamId::kTestSet), static_cast<int>(StreamId::kReferenceSet));
  EXPECT_EQ(stream_name(StreamId::kTestSet), "test_set");
}

TEST(Random, Uniform01Range) {
  std::mt19937_64 rng(1);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(rng);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
}
