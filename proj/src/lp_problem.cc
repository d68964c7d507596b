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

#include "imlp/lp_problem.hpp"

#include <cmath>
#include <string>

#include "imlp/error.hpp"

namespace imlp {
namespace {

void CheckFinite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ValidationError(std::string(what) + " contains a non-finite entry");
    }
  }
}

}  // namespace

double LpProblem::Objective(std::span<const double> x) const {
  return Dot(cost, x) + objective_offset;
}

void Validate(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw DimensionError(msg);
  };
  require(p.lower.size() == n, "len(lb) != number of variables");
  require(p.upper.size() == n, "len(ub) != number of variables");
  require(p.ineq_matrix.rows() == p.ineq_rhs.size(),
          "rows(G) = " + std::to_string(p.ineq_matrix.rows()) +
              " but len(h) = " + std::to_string(p.ineq_rhs.size()));
  require(p.eq_matrix.rows() == p.eq_rhs.size(),
          "rows(A) = " + std::to_string(p.eq_matrix.rows()) +
              " but len(b) = " + std::to_string(p.eq_rhs.size()));
  require(p.ineq_matrix.rows() == 0 || p.ineq_matrix.cols() == n,
          "cols(G) != number of variables");
  require(p.eq_matrix.rows() == 0 || p.eq_matrix.cols() == n,
          "cols(A) != number of variables");

  CheckFinite(p.cost, "c");
  CheckFinite(p.ineq_rhs, "h");
  CheckFinite(p.eq_rhs, "b");
  CheckFinite(p.ineq_matrix.data(), "G");
  CheckFinite(p.eq_matrix.data(), "A");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(p.lower[i]) || std::isnan(p.upper[i])) {
      throw ValidationError("bound of variable " + std::to_string(i) +
                            " is NaN");
    }
    if (p.lower[i] > p.upper[i]) {
      throw ValidationError("lb > ub for variable " + std::to_string(i));
    }
    if (p.lower[i] == kInfinity || p.upper[i] == -kInfinity) {
      throw ValidationError("empty domain for variable " + std::to_string(i));
    }
  }
}

double StandardLp::Objective(std::span<const double> x) const {
  return Dot(cost, x) + objective_offset;
}

StandardLp MakeStandardLp(DenseMatrix matrix, Vector rhs, Vector cost) {
  if (matrix.rows() != rhs.size() ||
      (matrix.rows() > 0 && matrix.cols() != cost.size())) {
    throw DimensionError("MakeStandardLp: inconsistent sizes");
  }
  StandardLp s;
  s.matrix = std::move(matrix);
  s.rhs = std::move(rhs);
  s.cost = std::move(cost);
  s.var_map.num_original = s.cost.size();
  return s;
}

StandardLp ToStandardForm(const LpProblem& p) {
  Validate(p);
  const std::size_t n = p.num_vars();
  const std::size_t m1 = p.num_ineq();
  const std::size_t m2 = p.num_eq();

  StandardLp s;
  s.var_map.num_original = n;
  s.objective_offset = p.objective_offset;

  // Column layout first: the variable transform decides how many negative
  // parts and bound rows there are.
  std::size_t next_col = n;
  std::vector<std::size_t> bounded;  // variables needing x' + s = ub - lb
  for (std::size_t i = 0; i < n; ++i) {
    const double lb = p.lower[i];
    const double ub = p.upper[i];
    if (std::isfinite(lb)) {
      if (lb != 0.0) {
        s.var_map.entries.push_back({VarMap::Kind::kShift, i, i, 0, lb});
      }
      if (std::isfinite(ub)) bounded.push_back(i);
    } else if (std::isfinite(ub)) {
      s.var_map.entries.push_back({VarMap::Kind::kReflect, i, i, 0, ub});
    } else {
      s.var_map.entries.push_back(
          {VarMap::Kind::kSplit, i, i, next_col++, 0.0});
    }
  }
  const std::size_t num_structural = next_col;
  const std::size_t rows = m1 + m2 + bounded.size();
  const std::size_t cols = num_structural + m1 + bounded.size();

  s.matrix = DenseMatrix(rows, cols);
  s.rhs.assign(rows, 0.0);
  s.cost.assign(cols, 0.0);

  // Per-variable coefficient multiplier on its main column and the constant
  // absorbed by the transform: x_i = sign * x'_i + shift (+ split part).
  std::vector<double> sign(n, 1.0);
  std::vector<double> shift(n, 0.0);
  std::vector<std::size_t> negative(n, 0);
  std::vector<bool> is_split(n, false);
  for (const auto& e : s.var_map.entries) {
    switch (e.kind) {
      case VarMap::Kind::kShift:
        shift[e.original] = e.offset;
        break;
      case VarMap::Kind::kReflect:
        sign[e.original] = -1.0;
        shift[e.original] = e.offset;
        break;
      case VarMap::Kind::kSplit:
        is_split[e.original] = true;
        negative[e.original] = e.negative_column;
        break;
    }
  }

  auto emit_row = [&](std::size_t row, std::span<const double> coeffs,
                      double rhs) {
    double r = rhs;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = coeffs[i];
      if (a == 0.0) continue;
      s.matrix(row, i) = sign[i] * a;
      if (is_split[i]) s.matrix(row, negative[i]) = -a;
      r -= a * shift[i];
    }
    s.rhs[row] = r;
  };

  for (std::size_t r = 0; r < m1; ++r) {
    emit_row(r, p.ineq_matrix.row(r), p.ineq_rhs[r]);
    s.matrix(r, num_structural + r) = -1.0;  // surplus
  }
  for (std::size_t r = 0; r < m2; ++r) {
    emit_row(m1 + r, p.eq_matrix.row(r), p.eq_rhs[r]);
  }
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    const std::size_t i = bounded[k];
    const std::size_t row = m1 + m2 + k;
    s.matrix(row, i) = 1.0;
    s.matrix(row, num_structural + m1 + k) = 1.0;
    s.rhs[row] = p.upper[i] - p.lower[i];
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double ci = p.cost[i];
    s.cost[i] = sign[i] * ci;
    if (is_split[i]) s.cost[negative[i]] = -ci;
    s.objective_offset += ci * shift[i];
  }
  return s;
}

Vector RecoverSolution(const StandardLp& s, std::span<const double> x_std) {
  if (x_std.size() != s.num_cols()) {
    throw DimensionError("RecoverSolution: expected " +
                         std::to_string(s.num_cols()) + " entries, got " +
                         std::to_string(x_std.size()));
  }
  const std::size_t n = s.var_map.num_original;
  Vector x(x_std.begin(), x_std.begin() + static_cast<std::ptrdiff_t>(n));
  for (const auto& e : s.var_map.entries) {
    switch (e.kind) {
      case VarMap::Kind::kShift:
        x[e.original] = x_std[e.column] + e.offset;
        break;
      case VarMap::Kind::kReflect:
        x[e.original] = e.offset - x_std[e.column];
        break;
      case VarMap::Kind::kSplit:
        x[e.original] = x_std[e.column] - x_std[e.negative_column];
        break;
    }
  }
  return x;
}

double SaddleProblem::Lagrangian(std::span<const double> x,
                                 std::span<const double> y) const {
  const Vector kx = Multiply(matrix, x);
  return Dot(cost, x) - Dot(y, kx) + Dot(rhs, y);
}

SaddleProblem MakeSaddleProblem(const LpProblem& p) {
  Validate(p);
  const std::size_t n = p.num_vars();
  const std::size_t m1 = p.num_ineq();
  const std::size_t m2 = p.num_eq();
  SaddleProblem sp;
  sp.matrix = DenseMatrix(m1 + m2, n);
  for (std::size_t r = 0; r < m1; ++r) {
    for (std::size_t j = 0; j < n; ++j) sp.matrix(r, j) = p.ineq_matrix(r, j);
  }
  for (std::size_t r = 0; r < m2; ++r) {
    for (std::size_t j = 0; j < n; ++j)
      sp.matrix(m1 + r, j) = p.eq_matrix(r, j);
  }
  sp.rhs = p.ineq_rhs;
  sp.rhs.insert(sp.rhs.end(), p.eq_rhs.begin(), p.eq_rhs.end());
  sp.cost = p.cost;
  sp.lower = p.lower;
  sp.upper = p.upper;
  sp.dual_nonnegative.assign(m1 + m2, false);
  for (std::size_t r = 0; r < m1; ++r) sp.dual_nonnegative[r] = true;
  return sp;
}

}  // namespace imlp
