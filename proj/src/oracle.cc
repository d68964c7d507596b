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

#include "imlp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "imlp/error.hpp"

namespace imlp::oracle {
namespace {

constexpr double kPivotTol = 1e-9;

// Inverse by Gauss-Jordan with partial pivoting; nullopt when singular.
std::optional<DenseMatrix> Inverse(DenseMatrix a) {
  const std::size_t n = a.rows();
  DenseMatrix inv = DenseMatrix::Identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    }
    if (std::abs(a(piv, col)) < 1e-11) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::optional<Vector> Solve(const DenseMatrix& a, std::span<const double> b) {
  auto inv = Inverse(a);
  if (!inv) return std::nullopt;
  return Multiply(*inv, b);
}

DenseMatrix Columns(const DenseMatrix& a,
                    const std::vector<std::size_t>& cols) {
  DenseMatrix out(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = a(i, cols[k]);
  }
  return out;
}

enum class Outcome { kOptimal, kUnbounded };

struct Tableau {
  DenseMatrix a;
  Vector b;
  Vector c;
  std::vector<bool> can_enter;
  std::vector<std::size_t> basis;
  DenseMatrix binv;
  Vector x_basic;
};

Outcome RunSimplex(Tableau& t) {
  const std::size_t m = t.a.rows();
  const std::size_t n = t.a.cols();
  for (int iter = 0; iter < 100000; ++iter) {
    auto inv = Inverse(Columns(t.a, t.basis));
    if (!inv) throw Error("simplex oracle: singular basis");
    t.binv = std::move(*inv);
    t.x_basic = Multiply(t.binv, t.b);
    Vector cb(m);
    for (std::size_t k = 0; k < m; ++k) cb[k] = t.c[t.basis[k]];
    const Vector y = MultiplyTransposed(t.binv, cb);

    std::vector<bool> in_basis(n, false);
    for (std::size_t j : t.basis) in_basis[j] = true;
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < n && !entering; ++j) {
      if (in_basis[j] || !t.can_enter[j]) continue;
      double reduced = t.c[j];
      for (std::size_t i = 0; i < m; ++i) reduced -= y[i] * t.a(i, j);
      if (reduced < -kPivotTol) entering = j;
    }
    if (!entering) return Outcome::kOptimal;

    Vector col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = t.a(i, *entering);
    const Vector d = Multiply(t.binv, col);
    std::optional<std::size_t> leave;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
      if (d[k] <= kPivotTol) continue;
      const double ratio = std::max(0.0, t.x_basic[k]) / d[k];
      if (ratio < best - 1e-12 ||
          (ratio <= best + 1e-12 && leave && t.basis[k] < t.basis[*leave])) {
        best = std::min(best, ratio);
        leave = k;
      }
    }
    if (!leave) return Outcome::kUnbounded;
    t.basis[*leave] = *entering;
  }
  throw Error("simplex oracle: iteration cap reached");
}

// Row-reduces [K | b]; returns the independent rows, or nullopt when the
// system is inconsistent.
std::optional<std::pair<DenseMatrix, Vector>> IndependentRows(
    const DenseMatrix& k, std::span<const double> b) {
  const std::size_t m = k.rows();
  const std::size_t n = k.cols();
  DenseMatrix a(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = k(i, j);
    a(i, n) = b[i];
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    for (std::size_t r = rank + 1; r < m; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    }
    if (std::abs(a(piv, col)) < 1e-10) continue;
    for (std::size_t j = 0; j <= n; ++j) std::swap(a(piv, j), a(rank, j));
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank) continue;
      const double f = a(r, col) / a(rank, col);
      for (std::size_t j = 0; j <= n; ++j) a(r, j) -= f * a(rank, j);
    }
    ++rank;
  }
  for (std::size_t r = rank; r < m; ++r) {
    if (std::abs(a(r, n)) > 1e-8) return std::nullopt;
  }
  DenseMatrix kr(rank, n);
  Vector br(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < n; ++j) kr(i, j) = a(i, j);
    br[i] = a(i, n);
  }
  return std::make_pair(std::move(kr), std::move(br));
}

// Calls f(indices) for every r-subset of {0..n-1} in lexicographic order.
template <typename F>
void ForEachSubset(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double Binomial(std::size_t n, std::size_t r) {
  double out = 1.0;
  for (std::size_t i = 0; i < r; ++i) {
    out = out * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return out;
}

int CountBelow(std::span<const double> d, std::span<const double> e, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1];
    q = d[i] - x - (i == 0 ? 0.0 : off / q);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

OracleSolution SimplexSolve(const StandardLp& p) {
  const std::size_t m = p.num_rows();
  const std::size_t n = p.num_cols();
  OracleSolution out;
  if (m == 0) {
    // Bounded iff every cost is non-negative; then x = 0.
    for (double c : p.cost) {
      if (c < 0.0) {
        out.status = OracleStatus::kUnbounded;
        return out;
      }
    }
    out.status = OracleStatus::kOptimal;
    out.x.assign(n, 0.0);
    out.objective = p.objective_offset;
    return out;
  }

  Tableau t;
  t.a = DenseMatrix(m, n + m);
  t.b = p.rhs;
  Vector flip(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.b[i] < 0.0) flip[i] = -1.0;
    t.b[i] *= flip[i];
    for (std::size_t j = 0; j < n; ++j) t.a(i, j) = flip[i] * p.matrix(i, j);
    t.a(i, n + i) = 1.0;
  }
  // Phase 1: minimize the sum of artificials.
  t.c.assign(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) t.c[n + i] = 1.0;
  t.can_enter.assign(n + m, true);
  for (std::size_t i = 0; i < m; ++i) t.basis.push_back(n + i);
  RunSimplex(t);
  double infeasibility = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (t.basis[k] >= n) infeasibility += std::max(0.0, t.x_basic[k]);
  }
  if (infeasibility > 1e-8 * std::max(1.0, NormInf(t.b))) {
    out.status = OracleStatus::kInfeasible;
    return out;
  }
  // Pivot zero-level artificials out where a structural column allows it.
  for (std::size_t k = 0; k < m; ++k) {
    if (t.basis[k] < n) continue;
    std::vector<bool> in_basis(n + m, false);
    for (std::size_t j : t.basis) in_basis[j] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_basis[j]) continue;
      double entry = 0.0;
      for (std::size_t i = 0; i < m; ++i) entry += t.binv(k, i) * t.a(i, j);
      if (std::abs(entry) > 1e-7) {
        t.basis[k] = j;
        auto inv = Inverse(Columns(t.a, t.basis));
        if (!inv) throw Error("simplex oracle: singular basis after phase 1");
        t.binv = std::move(*inv);
        break;
      }
    }
  }
  // Phase 2.
  for (std::size_t j = 0; j < n; ++j) t.c[j] = p.cost[j];
  for (std::size_t i = 0; i < m; ++i) {
    t.c[n + i] = 0.0;
    t.can_enter[n + i] = false;
  }
  if (RunSimplex(t) == Outcome::kUnbounded) {
    out.status = OracleStatus::kUnbounded;
    return out;
  }
  out.status = OracleStatus::kOptimal;
  out.x.assign(n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    if (t.basis[k] < n) out.x[t.basis[k]] = std::max(0.0, t.x_basic[k]);
  }
  Vector cb(m);
  for (std::size_t k = 0; k < m; ++k) cb[k] = t.c[t.basis[k]];
  out.y = MultiplyTransposed(t.binv, cb);
  for (std::size_t i = 0; i < m; ++i) out.y[i] *= flip[i];
  out.objective = p.Objective(out.x);
  return out;
}

OracleSolution VertexEnumerate(const StandardLp& p) {
  OracleSolution out;
  const std::size_t n = p.num_cols();
  auto reduced = IndependentRows(p.matrix, p.rhs);
  if (!reduced) return out;
  const auto& [k, b] = *reduced;
  const std::size_t r = k.rows();
  if (Binomial(n, r) > 1e6) throw Error("vertex enumeration: too many bases");
  double best = std::numeric_limits<double>::infinity();
  ForEachSubset(n, r, [&](const std::vector<std::size_t>& cols) {
    auto xb = Solve(Columns(k, cols), b);
    if (!xb) return;
    for (double v : *xb) {
      if (v < -1e-9) return;
    }
    Vector x(n, 0.0);
    for (std::size_t i = 0; i < r; ++i) x[cols[i]] = std::max(0.0, (*xb)[i]);
    const double obj = p.Objective(x);
    if (obj < best) {
      best = obj;
      out.x = std::move(x);
    }
  });
  if (std::isfinite(best)) {
    out.status = OracleStatus::kOptimal;
    out.objective = best;
  }
  return out;
}

OracleSolution VertexEnumerateBoxed(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  // Inequality rows a^T x >= rhs: G rows, then finite bounds.
  std::vector<Vector> rows;
  Vector rhs;
  for (std::size_t i = 0; i < p.num_ineq(); ++i) {
    rows.emplace_back(p.ineq_matrix.row(i).begin(), p.ineq_matrix.row(i).end());
    rhs.push_back(p.ineq_rhs[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(p.lower[j])) {
      Vector e(n, 0.0);
      e[j] = 1.0;
      rows.push_back(e);
      rhs.push_back(p.lower[j]);
    }
    if (std::isfinite(p.upper[j])) {
      Vector e(n, 0.0);
      e[j] = -1.0;
      rows.push_back(e);
      rhs.push_back(-p.upper[j]);
    }
  }
  const std::size_t m2 = p.num_eq();
  OracleSolution out;
  if (m2 > n) return out;
  const std::size_t pick = n - m2;
  if (Binomial(rows.size(), pick) > 1e6) {
    throw Error("vertex enumeration: too many candidate vertices");
  }
  auto feasible = [&](const Vector& x) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (Dot(rows[i], x) < rhs[i] - 1e-9 * (1.0 + std::abs(rhs[i]))) {
        return false;
      }
    }
    const Vector ax = Multiply(p.eq_matrix, x);
    for (std::size_t i = 0; i < m2; ++i) {
      if (std::abs(ax[i] - p.eq_rhs[i]) >
          1e-9 * (1.0 + std::abs(p.eq_rhs[i]))) {
        return false;
      }
    }
    return true;
  };
  double best = std::numeric_limits<double>::infinity();
  ForEachSubset(rows.size(), pick, [&](const std::vector<std::size_t>& idx) {
    DenseMatrix a(n, n);
    Vector b(n);
    for (std::size_t i = 0; i < m2; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = p.eq_matrix(i, j);
      b[i] = p.eq_rhs[i];
    }
    for (std::size_t k = 0; k < pick; ++k) {
      for (std::size_t j = 0; j < n; ++j) a(m2 + k, j) = rows[idx[k]][j];
      b[m2 + k] = rhs[idx[k]];
    }
    auto x = Solve(a, b);
    if (!x || !feasible(*x)) return;
    const double obj = p.Objective(*x);
    if (obj < best) {
      best = obj;
      out.x = std::move(*x);
    }
  });
  if (std::isfinite(best)) {
    out.status = OracleStatus::kOptimal;
    out.objective = best;
  }
  return out;
}

double DenseSvdMax(const DenseMatrix& k) {
  // Work on the orientation with fewer columns.
  DenseMatrix u = k.cols() > k.rows() ? k.Transposed() : k;
  const std::size_t rows = u.rows();
  const std::size_t cols = u.cols();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        double gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += u(i, p) * u(i, p);
          beta += u(i, q) * u(i, q);
          gamma += u(i, p) * u(i, q);
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) ||
            gamma == 0.0) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double up = u(i, p);
          const double uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
        }
      }
    }
    if (!rotated) break;
  }
  double best = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += u(i, j) * u(i, j);
    best = std::max(best, std::sqrt(s));
  }
  return best;
}

Vector SturmBisection(std::span<const double> d, std::span<const double> e) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(e[i - 1]);
    if (i + 1 < n) radius += std::abs(e[i]);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  const double pad =
      1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  lo -= pad;
  hi += pad;
  Vector out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest x with more than k eigenvalues below it.
    double a = lo;
    double b = hi;
    for (int it = 0; it < 300; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (CountBelow(d, e, mid) > static_cast<int>(k)) {
        b = mid;
      } else {
        a = mid;
      }
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

Vector SymmetricEigenvalues(const DenseMatrix& input) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw DimensionError("matrix must be square");
  DenseMatrix a = input;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    Vector v(n, 0.0);
    double norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a(k + 1, k) > 0.0 ? -norm : norm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    const double vn = Norm2(v);
    if (vn == 0.0) continue;
    for (double& x : v) x /= vn;
    // A <- H A H with H = I - 2 v v^T.
    const Vector p = Multiply(a, v);
    const double vp = Dot(v, p);
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = p[i] - vp * v[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= 2.0 * (v[i] * w[j] + w[i] * v[j]);
      }
    }
  }
  Vector d(n);
  Vector e(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = a(i + 1, i);
  return SturmBisection(d, e);
}

double DenseEigMax(const DenseMatrix& a) {
  const Vector ev = SymmetricEigenvalues(a);
  return ev.empty() ? 0.0 : ev.back();
}

DenseMatrix Hilbert(std::size_t n) {
  DenseMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  }
  return h;
}

DenseMatrix RandomMatrix(std::size_t rows, std::size_t cols,
                         std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  DenseMatrix k(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) k(i, j) = normal(rng);
  }
  return k;
}

StandardLp RandomFeasibleLp(std::size_t m, std::size_t n,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  DenseMatrix k = RandomMatrix(m, n, rng);
  Vector x0(n);
  for (double& v : x0) v = unit(rng);
  Vector y0(m);
  for (double& v : y0) v = normal(rng);
  Vector lambda0(n);
  for (double& v : lambda0) v = unit(rng);
  Vector b = Multiply(k, x0);
  Vector c = MultiplyTransposed(k, y0);
  for (std::size_t j = 0; j < n; ++j) c[j] += lambda0[j];
  return MakeStandardLp(std::move(k), std::move(b), std::move(c));
}

LpProblem RandomBoxedLp(std::size_t n, std::size_t m1, std::size_t m2,
                        bool allow_free, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  LpProblem p;
  p.name = "random-boxed";
  p.lower.assign(n, -kInfinity);
  p.upper.assign(n, kInfinity);
  Vector x0(n);
  Vector r(n);
  bool used_free = false;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = unit(rng);
    const double lb = -2.0 * unit(rng);
    if (allow_free && !used_free && u < 0.15) {
      used_free = true;
      x0[j] = normal(rng);
      r[j] = 0.0;
    } else if (u < 0.55) {
      p.lower[j] = lb;
      p.upper[j] = lb + 0.5 + 2.5 * unit(rng);
      x0[j] = p.lower[j] + (p.upper[j] - p.lower[j]) * unit(rng);
      r[j] = normal(rng);
    } else if (u < 0.8) {
      p.lower[j] = lb;
      x0[j] = lb + 2.0 * unit(rng);
      r[j] = unit(rng);
    } else {
      p.upper[j] = lb + 1.0;
      x0[j] = p.upper[j] - 2.0 * unit(rng);
      r[j] = -unit(rng);
    }
  }
  p.ineq_matrix = RandomMatrix(m1, n, rng);
  p.ineq_rhs = Multiply(p.ineq_matrix, x0);
  for (double& h : p.ineq_rhs) h -= unit(rng);
  p.eq_matrix = RandomMatrix(m2, n, rng);
  p.eq_rhs = Multiply(p.eq_matrix, x0);
  Vector mu(m1);
  for (double& v : mu) v = unit(rng);
  Vector nu(m2);
  for (double& v : nu) v = normal(rng);
  p.cost = MultiplyTransposed(p.ineq_matrix, mu);
  const Vector atnu = MultiplyTransposed(p.eq_matrix, nu);
  for (std::size_t j = 0; j < n; ++j) p.cost[j] += atnu[j] + r[j];
  return p;
}

}  // namespace imlp::oracle
