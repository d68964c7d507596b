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

#include "imlp/precond.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "imlp/error.hpp"
#include "imlp/lp_problem.hpp"
#include "test_support.hpp"

namespace imlp {
namespace {

// Entries with magnitudes log-uniform in [1e-4, 1e4] and random signs.
DenseMatrix WideRangeMatrix(std::size_t m, std::size_t n,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-4.0, 4.0);
  std::bernoulli_distribution sign(0.5);
  DenseMatrix k(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      k(i, j) = (sign(rng) ? 1.0 : -1.0) * std::pow(10.0, exponent(rng));
    }
  }
  return k;
}

std::pair<Vector, Vector> InfNorms(const DenseMatrix& k) {
  Vector rows(k.rows(), 0.0), cols(k.cols(), 0.0);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      rows[i] = std::max(rows[i], std::abs(k(i, j)));
      cols[j] = std::max(cols[j], std::abs(k(i, j)));
    }
  }
  return {rows, cols};
}

TEST(RuizTest, EquilibratedInputIsUnchanged) {
  const RuizResult r = RuizRescale(DenseMatrix{{1.0}}, 10);
  EXPECT_EQ(r.row_scale, (Vector{1.0}));
  EXPECT_EQ(r.col_scale, (Vector{1.0}));
  EXPECT_EQ(r.scaled, (DenseMatrix{{1.0}}));
}

TEST(RuizTest, DiagonalWithWideRangeBecomesIdentity) {
  const RuizResult r = RuizRescale(DenseMatrix{{100, 0}, {0, 0.01}}, 10);
  EXPECT_LE(testing::MaxAbsDiff(r.scaled, DenseMatrix::Identity(2)), 1e-6);
}

TEST(RuizTest, ZeroRowKeepsUnitScale) {
  const DenseMatrix k{{2, 4}, {0, 0}, {1, 8}};
  const RuizResult r = RuizRescale(k, 10);
  EXPECT_EQ(r.row_scale[1], 1.0);
  // The zero row does not influence the other scales.
  const RuizResult without = RuizRescale(DenseMatrix{{2, 4}, {1, 8}}, 10);
  EXPECT_EQ(r.row_scale[0], without.row_scale[0]);
  EXPECT_EQ(r.row_scale[2], without.row_scale[1]);
  EXPECT_EQ(r.col_scale, without.col_scale);
}

TEST(RuizTest, ScaledMatrixIsProductOfScales) {
  std::mt19937_64 rng(3);
  const DenseMatrix k = WideRangeMatrix(7, 9, rng);
  const RuizResult r = RuizRescale(k, 10);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    for (std::size_t j = 0; j < k.cols(); ++j) {
      const double expected = r.row_scale[i] * k(i, j) * r.col_scale[j];
      EXPECT_NEAR(r.scaled(i, j), expected, 1e-14 * std::abs(expected));
    }
  }
}

TEST(RuizTest, EquilibratesWideRangeMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 5 + rng() % 30;
    const std::size_t n = 5 + rng() % 30;
    const DenseMatrix k = WideRangeMatrix(m, n, rng);
    for (const auto& [iters, lo] : {std::pair{10, 0.5}, std::pair{30, 0.99}}) {
      const auto [rows, cols] = InfNorms(RuizRescale(k, iters).scaled);
      for (double v : rows) {
        EXPECT_GE(v, lo);
        EXPECT_LE(v, 1.0 + 1e-12);
      }
      for (double v : cols) {
        EXPECT_GE(v, lo);
        EXPECT_LE(v, 1.0 + 1e-12);
      }
    }
  }
}

TEST(DiagonalPrecondTest, AllOnes) {
  const auto p = DiagonalPrecond(DenseMatrix{{1, 1}, {1, 1}});
  EXPECT_EQ(p.primal_step, (Vector{0.5, 0.5}));
  EXPECT_EQ(p.dual_step, (Vector{0.5, 0.5}));
  EXPECT_TRUE(p.warnings.empty());
}

TEST(DiagonalPrecondTest, Diagonal) {
  const auto p = DiagonalPrecond(DenseMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(p.primal_step, (Vector{0.5, 1.0 / 3.0}));
  EXPECT_EQ(p.dual_step, (Vector{0.5, 1.0 / 3.0}));
}

TEST(DiagonalPrecondTest, ZeroColumnIsClampedWithWarning) {
  const auto p = DiagonalPrecond(DenseMatrix{{1, 0}, {2, 0}});
  EXPECT_EQ(p.primal_step[1], 1.0 / kPrecondEpsilon);
  EXPECT_FALSE(p.warnings.empty());
}

TEST(DiagonalPrecondTest, StepsArePositiveAndFinite) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = ComputeScaling(WideRangeMatrix(6, 11, rng), 10);
    for (const Vector* v :
         {&s.row_scale, &s.col_scale, &s.primal_step, &s.dual_step}) {
      for (double x : *v) {
        EXPECT_TRUE(std::isfinite(x));
        EXPECT_GT(x, 0.0);
      }
    }
  }
}

TEST(ScaleProblemTest, ScalesMatrixRhsAndCost) {
  StandardLp s;
  s.matrix = DenseMatrix{{100, 1}, {2, 0.5}};
  s.rhs = {3, 4};
  s.cost = {5, -6};
  const ScalingInfo info = ComputeScaling(s.matrix, 10);
  const StandardLp t = ScaleProblem(s, info);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_DOUBLE_EQ(t.rhs[i], info.row_scale[i] * s.rhs[i]);
    EXPECT_DOUBLE_EQ(t.cost[i], info.col_scale[i] * s.cost[i]);
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_DOUBLE_EQ(t.matrix(i, j),
                       info.row_scale[i] * s.matrix(i, j) * info.col_scale[j]);
    }
  }
  EXPECT_THROW(ScaleProblem(s, ComputeScaling(DenseMatrix{{1, 2, 3}}, 2)),
               DimensionError);
}

TEST(ScaleProblemTest, BoundsDivideByColumnScale) {
  const Vector b = ScaleBounds(Vector{0.0, 2.0, kInfinity}, Vector{1, 4, 2});
  EXPECT_EQ(b, (Vector{0.0, 0.5, kInfinity}));
}

}  // namespace
}  // namespace imlp
