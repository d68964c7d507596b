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

// Ground-truth engines for tests: a dense two-phase simplex, brute-force
// vertex enumeration, and dense singular/eigenvalue solvers that share no code
// with the solver's own numerics. Nothing here is tuned for speed.

#ifndef IMLP_ORACLE_HPP_
#define IMLP_ORACLE_HPP_

#include <cstdint>
#include <random>
#include <span>

#include "imlp/dense.hpp"
#include "imlp/lp_problem.hpp"

namespace imlp::oracle {

enum class OracleStatus { kOptimal, kInfeasible, kUnbounded };

struct OracleSolution {
  OracleStatus status = OracleStatus::kInfeasible;
  double objective = 0.0;  // includes the objective offset
  Vector x;
  Vector y;  // equality duals (simplex only)
};

// Two-phase revised simplex with Bland's rule. Refactorizes the basis every
// pivot.
OracleSolution SimplexSolve(const StandardLp& problem);

// Best basic feasible solution of K x = b, x >= 0. Assumes the LP is bounded.
OracleSolution VertexEnumerate(const StandardLp& problem);

// Best vertex of the boxed polyhedron {G x >= h, A x = b, lb <= x <= ub}.
// Assumes the LP is bounded and the polyhedron is pointed.
OracleSolution VertexEnumerateBoxed(const LpProblem& problem);

// Largest singular value by one-sided Jacobi rotations.
double DenseSvdMax(const DenseMatrix& k);

// All eigenvalues (ascending) of a symmetric matrix: Householder reduction to
// tridiagonal form, then Sturm-sequence bisection.
Vector SymmetricEigenvalues(const DenseMatrix& a);
double DenseEigMax(const DenseMatrix& a);

// Eigenvalues (ascending) of the tridiagonal matrix with diagonal `d` and
// off-diagonal `e` (length d.size() - 1), by bisection.
Vector SturmBisection(std::span<const double> d, std::span<const double> e);

DenseMatrix Hilbert(std::size_t n);

// Standard-normal matrix.
DenseMatrix RandomMatrix(std::size_t rows, std::size_t cols,
                         std::mt19937_64& rng);

// min c^T x s.t. K x = b, x >= 0 with b = K x0 (x0 >= 0) and
// c = K^T y0 + lambda0 (lambda0 >= 0), hence feasible and bounded.
StandardLp RandomFeasibleLp(std::size_t m, std::size_t n, std::mt19937_64& rng);

// Boxed LP with n variables, m1 inequalities and m2 equalities. Bounds mix
// finite boxes, one-sided bounds and (when allow_free) a free variable. The
// cost is built from a dual-feasible multiplier so the LP is bounded.
LpProblem RandomBoxedLp(std::size_t n, std::size_t m1, std::size_t m2,
                        bool allow_free, std::mt19937_64& rng);

}  // namespace imlp::oracle

#endif  // IMLP_ORACLE_HPP_
