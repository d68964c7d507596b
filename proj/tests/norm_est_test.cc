// Copyright 2026 The imlp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "imlp/norm_est.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "imlp/accel.hpp"
#include "imlp/error.hpp"
#include "imlp/oracle.hpp"

namespace imlp {
namespace {

LanczosResult RunLanczos(const DenseMatrix& k, int k_max,
                         std::uint64_t seed = 1) {
  ExactBackend b;
  b.Encode(BuildSymBlock(k));
  LanczosOptions opts;
  opts.k_max = k_max;
  opts.seed = seed;
  return LanczosSvd(b, opts);
}

// Ratio of the two largest singular values, from the eigenvalues of K^T K.
double SingularGap(const DenseMatrix& k) {
  const DenseMatrix kt = k.Transposed();
  DenseMatrix g(k.cols(), k.cols());
  for (std::size_t i = 0; i < k.cols(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      g(i, j) = Dot(kt.row(i), kt.row(j));
    }
  }
  const Vector ev = oracle::SymmetricEigenvalues(g);
  const double s1 = std::sqrt(std::max(0.0, ev[ev.size() - 1]));
  const double s2 = std::sqrt(std::max(0.0, ev[ev.size() - 2]));
  return s2 / s1;
}

TEST(LanczosTest, DiagonalSpectrum) {
  const auto r = RunLanczos(DenseMatrix{{3, 0}, {0, 1}}, 4);
  EXPECT_NEAR(r.sigma1, 3.0, 1e-10);
  EXPECT_EQ(r.alphas.size(), static_cast<std::size_t>(r.iters_used));
  EXPECT_EQ(r.betas.size(), static_cast<std::size_t>(r.iters_used));
}

TEST(LanczosTest, PermutationMatrix) {
  EXPECT_NEAR(RunLanczos(DenseMatrix{{0, 1}, {1, 0}}, 4).sigma1, 1.0, 1e-10);
}

TEST(LanczosTest, MatchesSvdOracle) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix k = oracle::RandomMatrix(20, 30, rng);
    const double ref = oracle::DenseSvdMax(k);
    const auto r = RunLanczos(k, 50, trial);
    EXPECT_LE(std::abs(r.sigma1 - ref) / ref, 1e-8);
  }
}

TEST(LanczosTest, SigmaIsLargestAbsoluteRitzValue) {
  std::mt19937_64 rng(21);
  const auto r = RunLanczos(oracle::RandomMatrix(6, 4, rng), 5);
  double best = 0.0;
  for (double v : r.ritz_values) best = std::max(best, std::abs(v));
  EXPECT_EQ(r.sigma1, best);
  EXPECT_TRUE(std::is_sorted(r.ritz_values.begin(), r.ritz_values.end()));
}

TEST(LanczosTest, RitzHistoryIsNonDecreasing) {
  std::mt19937_64 rng(22);
  const auto r = RunLanczos(oracle::RandomMatrix(15, 25, rng), 30);
  ASSERT_EQ(r.ritz_history.size(), static_cast<std::size_t>(r.iters_used));
  for (std::size_t j = 1; j < r.ritz_history.size(); ++j) {
    EXPECT_GE(r.ritz_history[j], r.ritz_history[j - 1] * (1 - 1e-12));
  }
  const double mean =
      std::accumulate(r.ritz_history.begin(), r.ritz_history.end(), 0.0) /
      r.ritz_history.size();
  EXPECT_NEAR(r.averaged_estimate, mean, 1e-12 * mean);
}

TEST(LanczosTest, StopsAtBlockDimension) {
  const auto r = RunLanczos(DenseMatrix{{1, 2}, {3, 4}}, 100);
  EXPECT_LE(r.iters_used, 4);
}

TEST(LanczosTest, BreakdownOnRankOneMatrix) {
  const auto r = RunLanczos(DenseMatrix(5, 5, 1.0), 100);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.sigma1, 5.0, 1e-10);
  EXPECT_LT(r.iters_used, 10);
}

TEST(LanczosTest, UsesFullModeProductsOnly) {
  ExactBackend b;
  b.Encode(BuildSymBlock(DenseMatrix{{1, 2, 0}, {0, 1, 3}}));
  LanczosOptions opts;
  opts.k_max = 3;
  const auto r = LanczosSvd(b, opts);
  EXPECT_EQ(b.telemetry().totals().n_mvm_calls,
            static_cast<std::uint64_t>(r.iters_used));
  EXPECT_EQ(b.telemetry().totals().n_cell_reads, 3u * 25);
}

TEST(LanczosTest, DeterministicGivenSeed) {
  std::mt19937_64 rng(23);
  const DenseMatrix k = oracle::RandomMatrix(8, 9, rng);
  const auto a = RunLanczos(k, 6, 3);
  const auto b = RunLanczos(k, 6, 3);
  EXPECT_EQ(a.alphas, b.alphas);
  EXPECT_EQ(a.betas, b.betas);
}

TEST(LanczosTest, AgreesWithPowerIterationOnGappedMatrices) {
  std::mt19937_64 rng(24);
  int checked = 0;
  while (checked < 5) {
    const DenseMatrix k = oracle::RandomMatrix(12, 16, rng);
    if (SingularGap(k) > 0.8) continue;
    const double lanczos = RunLanczos(k, 50).sigma1;
    const double power = PowerIterationNorm(k, 300, 1);
    EXPECT_LE(std::abs(lanczos - power), 1e-4 * lanczos);
    ++checked;
  }
}

TEST(TridiagTest, OneByOne) {
  EXPECT_EQ(TridiagEigenvalues(Vector{2.5}, Vector{7.0}), (Vector{2.5}));
}

TEST(TridiagTest, TwoByTwo) {
  const Vector ev = TridiagEigenvalues(Vector{0, 0}, Vector{1, 0});
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], -1.0, 1e-15);
  EXPECT_NEAR(ev[1], 1.0, 1e-15);
}

TEST(TridiagTest, MatchesSturmBisection) {
  std::mt19937_64 rng(25);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Vector d(12), e(12);
    for (double& v : d) v = normal(rng);
    for (double& v : e) v = normal(rng);
    const Vector ql = TridiagEigenvalues(d, e);
    const Vector sturm =
        oracle::SturmBisection(d, std::span<const double>(e).first(11));
    ASSERT_EQ(ql.size(), sturm.size());
    for (std::size_t i = 0; i < ql.size(); ++i) {
      EXPECT_NEAR(ql[i], sturm[i], 1e-10);
    }
  }
}

TEST(PowerIterationTest, Diagonal) {
  EXPECT_NEAR(PowerIterationNorm(DenseMatrix{{5, 0}, {0, 2}}, 30, 1), 5.0,
              1e-6);
}

TEST(PowerIterationTest, ZeroMatrix) {
  EXPECT_EQ(PowerIterationNorm(DenseMatrix(3, 4), 10, 1), 0.0);
}

TEST(PowerIterationTest, MatchesSvdOracleWhenGapped) {
  std::mt19937_64 rng(26);
  int checked = 0;
  while (checked < 10) {
    const DenseMatrix k = oracle::RandomMatrix(15, 15, rng);
    if (SingularGap(k) > 0.9) continue;
    const double ref = oracle::DenseSvdMax(k);
    EXPECT_NEAR(PowerIterationNorm(k, 200, checked), ref, 1e-4);
    ++checked;
  }
}

TEST(StepSizeTest, SafetyMargin) {
  const StepSizes s = DeriveStepSizes(2.0, 0.95);
  EXPECT_DOUBLE_EQ(s.tau, 0.475);
  EXPECT_DOUBLE_EQ(s.sigma, 0.475);
  const StepSizes u = DeriveStepSizes(1.0, 0.95);
  EXPECT_NEAR(u.tau * u.sigma, 0.9025, 1e-15);
  EXPECT_LT(u.tau * u.sigma, 1.0);
}

TEST(StepSizeTest, CouplingUnderEstimationError) {
  // L = 10, relative error 0.1, vartheta = 0.8 < 0.81, worst estimate 9.
  const StepSizes s = SafeCouplingSteps(9.0, 0.8);
  const double coupling = s.tau * s.sigma * 100.0;
  EXPECT_NEAR(coupling, 80.0 / 81.0, 1e-12);
  EXPECT_LT(coupling, 1.0);
}

TEST(StepSizeTest, RejectsBadInputs) {
  EXPECT_THROW(DeriveStepSizes(0.0, 0.95), ValidationError);
  EXPECT_THROW(DeriveStepSizes(-1.0, 0.95), ValidationError);
  EXPECT_THROW(DeriveStepSizes(1.0, 1.0), ValidationError);
  EXPECT_THROW(DeriveStepSizes(1.0, 0.0), ValidationError);
}

TEST(BlockEigenvalueTest, EqualsLargestSingularValue) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix k =
        oracle::RandomMatrix(1 + rng() % 15, 1 + rng() % 20, rng);
    const double svd = oracle::DenseSvdMax(k);
    const double eig = oracle::DenseEigMax(BuildSymBlock(k).matrix);
    EXPECT_LE(std::abs(eig - svd), 1e-10 * svd);
  }
}

}  // namespace
}  // namespace imlp
