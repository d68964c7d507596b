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

#include <algorithm>
#include <cmath>

#include "imlp/error.hpp"

namespace imlp {

RuizResult RuizRescale(const DenseMatrix& matrix, int iters) {
  const std::size_t m = matrix.rows();
  const std::size_t n = matrix.cols();
  RuizResult out{Vector(m, 1.0), Vector(n, 1.0), matrix};
  Vector row_norm(m);
  Vector col_norm(n);
  for (int it = 0; it < iters; ++it) {
    std::fill(row_norm.begin(), row_norm.end(), 0.0);
    std::fill(col_norm.begin(), col_norm.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double a = std::abs(out.scaled(i, j));
        row_norm[i] = std::max(row_norm[i], a);
        col_norm[j] = std::max(col_norm[j], a);
      }
    }
    for (double& r : row_norm) r = r > 0.0 ? 1.0 / std::sqrt(r) : 1.0;
    for (double& c : col_norm) c = c > 0.0 ? 1.0 / std::sqrt(c) : 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out.scaled(i, j) *= row_norm[i] * col_norm[j];
      }
      out.row_scale[i] *= row_norm[i];
    }
    for (std::size_t j = 0; j < n; ++j) out.col_scale[j] *= col_norm[j];
  }
  return out;
}

DiagonalPreconditioner DiagonalPrecond(const DenseMatrix& scaled) {
  const std::size_t m = scaled.rows();
  const std::size_t n = scaled.cols();
  Vector row_sum(m, 0.0);
  Vector col_sum(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = std::abs(scaled(i, j));
      row_sum[i] += a;
      col_sum[j] += a;
    }
  }
  DiagonalPreconditioner out{Vector(n), Vector(m), {}};
  for (std::size_t j = 0; j < n; ++j) {
    if (!(col_sum[j] > kPrecondEpsilon)) {
      out.warnings.push_back("column " + std::to_string(j) +
                             " is structurally empty; step clamped");
    }
    out.primal_step[j] = 1.0 / std::max(kPrecondEpsilon, col_sum[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(row_sum[i] > kPrecondEpsilon)) {
      out.warnings.push_back("row " + std::to_string(i) +
                             " is structurally empty; step clamped");
    }
    out.dual_step[i] = 1.0 / std::max(kPrecondEpsilon, row_sum[i]);
  }
  return out;
}

ScalingInfo ComputeScaling(const DenseMatrix& matrix, int ruiz_iters) {
  RuizResult ruiz = RuizRescale(matrix, ruiz_iters);
  DiagonalPreconditioner pc = DiagonalPrecond(ruiz.scaled);
  return {std::move(ruiz.row_scale), std::move(ruiz.col_scale),
          std::move(pc.primal_step), std::move(pc.dual_step),
          std::move(pc.warnings)};
}

StandardLp ScaleProblem(const StandardLp& problem, const ScalingInfo& scaling) {
  const std::size_t m = problem.num_rows();
  const std::size_t n = problem.num_cols();
  if (scaling.row_scale.size() != m || scaling.col_scale.size() != n ||
      problem.matrix.rows() != m || problem.matrix.cols() != n) {
    throw DimensionError("scaling does not match problem dimensions");
  }
  StandardLp out = problem;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.matrix(i, j) *= scaling.row_scale[i] * scaling.col_scale[j];
    }
    out.rhs[i] *= scaling.row_scale[i];
  }
  for (std::size_t j = 0; j < n; ++j) out.cost[j] *= scaling.col_scale[j];
  return out;
}

Vector ScaleBounds(std::span<const double> bounds,
                   std::span<const double> col_scale) {
  if (bounds.size() != col_scale.size()) {
    throw DimensionError("bounds and column scale differ in length");
  }
  Vector out(bounds.size());
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    out[j] = bounds[j] / col_scale[j];
  }
  return out;
}

}  // namespace imlp
