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

// LP instances in the boxed form
//
//   min c^T x + offset  s.t.  G x >= h,  A x = b,  lb <= x <= ub
//
// and in standard form
//
//   min c^T x + offset  s.t.  K x = b,  x >= 0,
//
// together with the bookkeeping needed to move solutions between the two.

#ifndef IMLP_LP_PROBLEM_HPP_
#define IMLP_LP_PROBLEM_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "imlp/dense.hpp"

namespace imlp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LpProblem {
  std::string name;
  Vector cost;
  double objective_offset = 0.0;
  // Inequality block, G x >= h. Has num_vars() columns even when empty.
  DenseMatrix ineq_matrix;
  Vector ineq_rhs;
  // Equality block, A x = b.
  DenseMatrix eq_matrix;
  Vector eq_rhs;
  // Entries may be -inf / +inf.
  Vector lower;
  Vector upper;

  std::size_t num_vars() const { return cost.size(); }
  std::size_t num_ineq() const { return ineq_rhs.size(); }
  std::size_t num_eq() const { return eq_rhs.size(); }

  double Objective(std::span<const double> x) const;
};

// Throws DimensionError when block sizes disagree and ValidationError on
// lb > ub or NaN data.
void Validate(const LpProblem& problem);

// How each original variable maps onto standard-form columns. Variables that
// keep their column unchanged (lb = 0, ub = +inf) have no entry, so a problem
// that is already in standard form yields an empty map.
struct VarMap {
  enum class Kind {
    kShift,    // x = x_std[column] + offset
    kReflect,  // x = offset - x_std[column]
    kSplit,    // x = x_std[column] - x_std[negative_column]
  };
  struct Entry {
    Kind kind;
    std::size_t original;
    std::size_t column;
    std::size_t negative_column = 0;
    double offset = 0.0;
  };

  std::size_t num_original = 0;
  std::vector<Entry> entries;

  bool IsIdentity() const { return entries.empty(); }
};

struct StandardLp {
  DenseMatrix matrix;  // K, m x n
  Vector rhs;          // b
  Vector cost;         // c
  double objective_offset = 0.0;
  VarMap var_map;

  std::size_t num_rows() const { return rhs.size(); }
  std::size_t num_cols() const { return cost.size(); }

  double Objective(std::span<const double> x) const;
};

// Rows: inequality rows (with a surplus column each), equality rows, then one
// row per variable with a finite upper bound above a finite lower bound.
// Columns: original variables, negative parts of split free variables, then
// slack/surplus columns.
StandardLp ToStandardForm(const LpProblem& problem);

// Inverse of the variable transformation. The recovered point has the same
// objective value as `x_std` under the boxed problem's objective.
Vector RecoverSolution(const StandardLp& standard,
                       std::span<const double> x_std);

// Builds a standard-form instance directly (no transformations recorded).
StandardLp MakeStandardLp(DenseMatrix matrix, Vector rhs, Vector cost);

// Saddle-point view of the boxed LP: L(x, y) = c^T x - y^T K x + q^T y with
// K = [G; A], q = [h; b], x in the box and the first m1 duals non-negative.
struct SaddleProblem {
  DenseMatrix matrix;
  Vector rhs;
  Vector cost;
  Vector lower;
  Vector upper;
  std::vector<bool> dual_nonnegative;

  double Lagrangian(std::span<const double> x, std::span<const double> y) const;
};

SaddleProblem MakeSaddleProblem(const LpProblem& problem);

}  // namespace imlp

#endif  // IMLP_LP_PROBLEM_HPP_
