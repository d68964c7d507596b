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

#include "imlp/pdhg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "imlp/error.hpp"

namespace imlp {
namespace {

bool AllFinite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double a) { return std::isfinite(a); });
}

Vector Unscale(std::span<const double> v, std::span<const double> d) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = d[i] * v[i];
  return out;
}

}  // namespace

void ValidateConfig(const PdhgConfig& c) {
  if (c.max_iters < 1) throw ValidationError("max_iters must be >= 1");
  if (!(c.tolerance > 0.0)) throw ValidationError("tolerance must be > 0");
  if (!(c.eta > 0.0 && c.eta < 1.0)) {
    throw ValidationError("eta must be in (0, 1)");
  }
  if (!(c.gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
  if (c.ruiz_iters < 0) throw ValidationError("ruiz_iters must be >= 0");
  if (c.lanczos_max < 1) throw ValidationError("lanczos_max must be >= 1");
  if (!(c.lanczos_eps > 0.0)) throw ValidationError("lanczos_eps must be > 0");
  if (c.check_interval < 1) {
    throw ValidationError("check_interval must be >= 1");
  }
}

double Residuals::max() const { return std::max({r_pri, r_dual, r_iter}); }

Vector ProjectBox(std::span<const double> v, std::span<const double> lower,
                  std::span<const double> upper) {
  if (lower.size() != v.size() || upper.size() != v.size()) {
    throw DimensionError("box bounds do not match vector length");
  }
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::min(upper[i], std::max(lower[i], v[i]));
  }
  return out;
}

void PdhgIterate(PdhgState& s, const ScaledProblem& p, Backend& backend,
                 double gamma) {
  const std::size_t n = s.x.size();
  const std::size_t m = s.y.size();
  s.theta = 1.0 / std::sqrt(1.0 + 2.0 * gamma * s.tau);
  s.tau *= s.theta;
  s.sigma /= s.theta;

  Vector x_bar(n);
  for (std::size_t j = 0; j < n; ++j) {
    x_bar[j] = s.x[j] + s.theta * (s.x[j] - s.x_prev[j]);
  }
  const Vector v_bar = MatmulAccel(backend, x_bar, MvmMode::kAx);
  for (std::size_t i = 0; i < m; ++i) {
    s.y[i] += s.sigma * p.dual_step[i] * (p.rhs[i] - v_bar[i]);
  }
  s.x_prev = s.x;
  const Vector u = MatmulAccel(backend, s.y, MvmMode::kATy);
  for (std::size_t j = 0; j < n; ++j) {
    const double step = s.x[j] - s.tau * p.primal_step[j] * (p.cost[j] - u[j]);
    s.x[j] = std::min(p.upper[j], std::max(p.lower[j], step));
  }
  ++s.k;
}

Residuals ComputeResiduals(std::span<const double> x, std::span<const double> y,
                           const DenseMatrix& k, std::span<const double> b,
                           std::span<const double> c) {
  Residuals r;
  const Vector kx = Multiply(k, x);
  const Vector kty = MultiplyTransposed(k, y);
  Vector primal(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) primal[i] = kx[i] - b[i];
  r.r_pri = Norm2(primal) / (1.0 + Norm2(b));

  r.lambda.resize(c.size());
  Vector dual(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double reduced = c[j] - kty[j];
    r.lambda[j] = std::max(0.0, reduced);
    dual[j] = reduced - r.lambda[j];
  }
  r.r_dual = Norm2(dual) / (1.0 + Norm2(c));

  Vector neg(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) neg[j] = std::max(0.0, -x[j]);
  r.r_iter = Norm2(neg) / (1.0 + Norm2(x));

  const double pobj = Dot(c, x);
  const double dobj = Dot(b, y);
  r.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
  return r;
}

std::string_view StatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
    case SolveStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

std::string FormatTraceCsv(const std::vector<TraceRow>& rows) {
  std::string out = "k,r_pri,r_dual,r_iter,gap,tau,sigma,energy_j,latency_s\n";
  char buf[512];
  for (const TraceRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.k,
                  r.r_pri, r.r_dual, r.r_iter, r.gap, r.tau, r.sigma,
                  r.energy_j, r.latency_s);
    out += buf;
  }
  return out;
}

PdhgSetup PreparePdhg(const StandardLp& problem, const PdhgConfig& config,
                      Backend& backend) {
  ValidateConfig(config);
  if (backend.encoded()) {
    throw Error("backend already holds an encoded matrix; use a fresh backend");
  }
  const std::size_t m = problem.num_rows();
  const std::size_t n = problem.num_cols();
  if (problem.matrix.rows() != m || problem.matrix.cols() != n) {
    throw DimensionError("standard-form matrix does not match rhs/cost");
  }

  PdhgSetup setup;
  setup.scaling = ComputeScaling(problem.matrix, config.ruiz_iters);
  setup.warnings = setup.scaling.warnings;
  const StandardLp scaled = ScaleProblem(problem, setup.scaling);
  ScaledProblem& p = setup.problem;
  p.matrix = scaled.matrix;
  p.rhs = scaled.rhs;
  p.cost = scaled.cost;
  p.lower = ScaleBounds(Vector(n, 0.0), setup.scaling.col_scale);
  p.upper = ScaleBounds(Vector(n, kInfinity), setup.scaling.col_scale);
  p.primal_step = setup.scaling.primal_step;
  p.dual_step = setup.scaling.dual_step;

  backend.set_phase(Phase::kEncode);
  backend.Encode(BuildSymBlock(p.matrix));

  backend.set_phase(Phase::kLanczos);
  setup.lanczos = LanczosSvd(
      backend, {config.lanczos_max, config.lanczos_eps, config.seed});
  double rho = setup.lanczos.sigma1;
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    setup.warnings.push_back("norm estimate is not positive; using 1");
    rho = 1.0;
  }
  setup.steps = DeriveStepSizes(rho, config.eta);
  backend.set_phase(Phase::kPdhg);
  return setup;
}

PdhgState InitialState(const PdhgSetup& setup, const PdhgConfig& config) {
  const ScaledProblem& p = setup.problem;
  const std::size_t n = p.cost.size();
  const std::size_t m = p.rhs.size();
  PdhgState s;
  s.tau = setup.steps.tau;
  s.sigma = setup.steps.sigma;
  s.x.assign(n, 0.0);
  s.y.assign(m, 0.0);
  if (!config.zero_start) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32), 0x494eu};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    for (double& v : s.x) v = normal(rng);
    for (double& v : s.y) v = normal(rng);
  }
  s.x = ProjectBox(s.x, p.lower, p.upper);
  s.x_prev = s.x;
  return s;
}

Solution PdhgSolve(const StandardLp& problem, const PdhgConfig& config,
                   Backend& backend) {
  PdhgSetup setup = PreparePdhg(problem, config, backend);
  const ScaledProblem& p = setup.problem;
  PdhgState state = InitialState(setup, config);

  Solution sol;
  sol.sigma1_estimate = setup.lanczos.sigma1;
  sol.ritz_history = setup.lanczos.ritz_history;
  sol.tau0 = state.tau;
  sol.sigma0 = state.sigma;
  sol.warnings = setup.warnings;

  Vector best_x = state.x;
  Vector best_y = state.y;
  Residuals best = ComputeResiduals(state.x, state.y, p.matrix, p.rhs, p.cost);
  SolveStatus status = SolveStatus::kIterationLimit;
  long long mid_k = 0;
  double mid_norm = Norm2(state.x);

  for (long long k = 1; k <= config.max_iters; ++k) {
    PdhgIterate(state, p, backend, config.gamma);
    if (!AllFinite(state.x) || !AllFinite(state.y)) {
      status = SolveStatus::kNumericalFailure;
      break;
    }
    if (k == config.max_iters / 2) {
      mid_k = k;
      mid_norm = Norm2(state.x);
    }
    if (k % config.check_interval != 0 && k != config.max_iters) continue;
    Residuals r = ComputeResiduals(state.x, state.y, p.matrix, p.rhs, p.cost);
    if (config.record_trace) {
      const TelemetryLedger& t = backend.telemetry();
      sol.trace.push_back({k, r.r_pri, r.r_dual, r.r_iter, r.gap, state.tau,
                           state.sigma, t.energy_j(), t.latency_s()});
    }
    const bool done = r.max() < config.tolerance;
    if (done || r.max() < best.max()) {
      best = std::move(r);
      best_x = state.x;
      best_y = state.y;
    }
    if (done) {
      status = SolveStatus::kOptimal;
      break;
    }
  }

  sol.status = status;
  sol.iterations = state.k;
  if (status == SolveStatus::kIterationLimit && state.k > mid_k) {
    sol.primal_norm_growth =
        (Norm2(state.x) - mid_norm) / static_cast<double>(state.k - mid_k);
  }
  sol.scaled_residuals = best;
  sol.x = Unscale(best_x, setup.scaling.col_scale);
  sol.y = Unscale(best_y, setup.scaling.row_scale);
  sol.objective = problem.Objective(sol.x);
  sol.residuals =
      ComputeResiduals(sol.x, sol.y, problem.matrix, problem.rhs, problem.cost);
  sol.telemetry = backend.telemetry();
  return sol;
}

}  // namespace imlp
