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

// Preconditioned PDHG for standard-form LPs, min c^T x s.t. K x = b, x >= 0,
// run on the saddle function c^T x - y^T (K x - b). Every iteration makes two
// accelerator products (K x_bar, then K^T y); stopping is decided on the host
// with the exact matrix.

#ifndef IMLP_PDHG_HPP_
#define IMLP_PDHG_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imlp/accel.hpp"
#include "imlp/dense.hpp"
#include "imlp/lp_problem.hpp"
#include "imlp/norm_est.hpp"
#include "imlp/precond.hpp"
#include "imlp/telemetry.hpp"

namespace imlp {

struct PdhgConfig {
  long long max_iters = 100000;
  double tolerance = 1e-6;
  double eta = 0.95;
  double gamma = 0.0;
  int ruiz_iters = 10;
  int lanczos_max = 100;
  double lanczos_eps = 1e-10;
  std::uint64_t seed = 0;
  long long check_interval = 1;
  // Start from x = 0, y = 0 instead of a seeded normal draw.
  bool zero_start = false;
  bool record_trace = true;
};

// Throws ValidationError on out-of-range fields.
void ValidateConfig(const PdhgConfig& config);

struct PdhgState {
  Vector x;
  Vector x_prev;
  Vector y;
  double tau = 0.0;
  double sigma = 0.0;
  long long k = 0;
  double theta = 1.0;
};

struct Residuals {
  double r_pri = 0.0;
  double r_dual = 0.0;
  double r_iter = 0.0;
  // |c^T x - b^T y| / (1 + |c^T x| + |b^T y|); diagnostic only.
  double gap = 0.0;
  Vector lambda;  // [c - K^T y]_+

  // The stopping measure max(r_pri, r_dual, r_iter).
  double max() const;
};

// Problem data as seen by the iteration (after scaling).
struct ScaledProblem {
  DenseMatrix matrix;
  Vector rhs;
  Vector cost;
  Vector lower;
  Vector upper;
  Vector primal_step;  // T
  Vector dual_step;    // Sigma
};

// out_i = min(ub_i, max(lb_i, v_i)).
Vector ProjectBox(std::span<const double> v, std::span<const double> lower,
                  std::span<const double> upper);

// One iteration:
//   theta = 1 / sqrt(1 + 2 gamma tau), tau <- theta tau, sigma <- sigma / theta
//   x_bar = x + theta (x - x_prev)
//   y+    = y + sigma Sigma (b - K x_bar)
//   x+    = proj(x - tau T (c - K^T y+))
// Exactly two backend products.
void PdhgIterate(PdhgState& state, const ScaledProblem& problem,
                 Backend& backend, double gamma);

Residuals ComputeResiduals(std::span<const double> x, std::span<const double> y,
                           const DenseMatrix& k, std::span<const double> b,
                           std::span<const double> c);

enum class SolveStatus { kOptimal, kIterationLimit, kNumericalFailure };
std::string_view StatusName(SolveStatus status);

struct TraceRow {
  long long k = 0;
  double r_pri = 0.0;
  double r_dual = 0.0;
  double r_iter = 0.0;
  double gap = 0.0;
  double tau = 0.0;
  double sigma = 0.0;
  double energy_j = 0.0;
  double latency_s = 0.0;
};

// CSV with a header row; numbers use 17 significant digits.
std::string FormatTraceCsv(const std::vector<TraceRow>& rows);

struct PdhgSetup {
  ScalingInfo scaling;
  ScaledProblem problem;
  LanczosResult lanczos;
  StepSizes steps;
  std::vector<std::string> warnings;
};

// Scaling and preconditioning, a single encode of the scaled block, and the
// Lanczos norm estimate. Throws Error if the backend is already encoded.
PdhgSetup PreparePdhg(const StandardLp& problem, const PdhgConfig& config,
                      Backend& backend);

// Starting point: x = proj(z1), y = z2 with z ~ N(0, I), or zeros.
PdhgState InitialState(const PdhgSetup& setup, const PdhgConfig& config);

struct Solution {
  Vector x;                // D2 x~
  Vector y;                // D1 y~
  double objective = 0.0;  // c^T x + offset
  SolveStatus status = SolveStatus::kIterationLimit;
  long long iterations = 0;
  Residuals scaled_residuals;
  Residuals residuals;  // recomputed on the unscaled data
  double sigma1_estimate = 0.0;
  double tau0 = 0.0;
  double sigma0 = 0.0;
  // (||x_end|| - ||x_mid||) / (k_end - k_mid); large positive values hint at
  // an unbounded or infeasible instance.
  double primal_norm_growth = 0.0;
  std::vector<TraceRow> trace;
  Vector ritz_history;
  TelemetryLedger telemetry;
  std::vector<std::string> warnings;
};

// Runs the full pipeline. Returns the best checked iterate (smallest max
// residual) when the iteration limit is reached.
Solution PdhgSolve(const StandardLp& problem, const PdhgConfig& config,
                   Backend& backend);

}  // namespace imlp

#endif  // IMLP_PDHG_HPP_
