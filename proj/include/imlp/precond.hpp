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

// Ruiz equilibration and Pock-Chambolle diagonal preconditioning.

#ifndef IMLP_PRECOND_HPP_
#define IMLP_PRECOND_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "imlp/dense.hpp"
#include "imlp/lp_problem.hpp"

namespace imlp {

// Lower clamp on row/column absolute sums in DiagonalPrecond.
inline constexpr double kPrecondEpsilon = 1e-12;

struct ScalingInfo {
  Vector row_scale;    // D1, length m
  Vector col_scale;    // D2, length n
  Vector primal_step;  // T, length n
  Vector dual_step;    // Sigma, length m
  // Human-readable notes about degenerate rows/columns.
  std::vector<std::string> warnings;
};

struct RuizResult {
  Vector row_scale;
  Vector col_scale;
  DenseMatrix scaled;
};

// Infinity-norm Ruiz: each pass divides row i by sqrt(max_j |K_ij|) and column
// j by sqrt(max_i |K_ij|). All-zero rows and columns keep scale 1.
RuizResult RuizRescale(const DenseMatrix& matrix, int iters);

struct DiagonalPreconditioner {
  Vector primal_step;  // T_jj = 1 / max(eps, sum_i |K_ij|)
  Vector dual_step;    // Sigma_ii = 1 / max(eps, sum_j |K_ij|)
  std::vector<std::string> warnings;
};

DiagonalPreconditioner DiagonalPrecond(const DenseMatrix& scaled);

// Runs both steps and packs the result.
ScalingInfo ComputeScaling(const DenseMatrix& matrix, int ruiz_iters);

// K~ = D1 K D2, b~ = D1 b, c~ = D2 c. The objective offset and variable map are
// carried over unchanged.
StandardLp ScaleProblem(const StandardLp& problem, const ScalingInfo& scaling);

// Componentwise v / d, used for lb~ = D2^{-1} lb.
Vector ScaleBounds(std::span<const double> bounds,
                   std::span<const double> col_scale);

}  // namespace imlp

#endif  // IMLP_PRECOND_HPP_
