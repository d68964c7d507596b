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

// Acceptance runner. Prints one [PASS]/[FAIL]/[SKIP] line per criterion and
// exits non-zero if any criterion fails. `--only N` runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "imlp/accel.hpp"
#include "imlp/dense.hpp"
#include "imlp/lp_problem.hpp"
#include "imlp/norm_est.hpp"
#include "imlp/oracle.hpp"
#include "imlp/pdhg.hpp"
#include "imlp/problem_io.hpp"
#include "imlp/rram.hpp"

namespace imlp::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

template <typename... Args>
std::string Fmt(const char* fmt, Args... args) {
  char buf[1024];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kFail;
  std::string detail;
};

Outcome Judge(bool ok, std::string detail) {
  return {ok ? Verdict::kPass : Verdict::kFail, std::move(detail)};
}

double Median(Vector v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double RelErr(double z, double z_ref) {
  return std::abs(z - z_ref) / std::abs(z_ref);
}

// The generated suite: 30 feasible, bounded LPs with m <= 12 and n <= 20.
struct SuiteLp {
  StandardLp lp;
  double reference = 0.0;  // simplex optimum
  Vector dual;             // simplex duals
};

const std::vector<SuiteLp>& Suite() {
  static const std::vector<SuiteLp> suite = [] {
    std::vector<SuiteLp> out;
    for (int s = 0; s < 30; ++s) {
      std::mt19937_64 rng(1000 + s);
      const std::size_t m = 4 + rng() % 9;
      const std::size_t n = m + 2 + rng() % (21 - m - 2);
      SuiteLp e;
      e.lp = oracle::RandomFeasibleLp(m, n, rng);
      const auto ref = oracle::SimplexSolve(e.lp);
      if (ref.status != oracle::OracleStatus::kOptimal) {
        std::fprintf(stderr, "suite instance %d has no simplex optimum\n", s);
        std::exit(2);
      }
      e.reference = ref.objective;
      e.dual = ref.y;
      out.push_back(std::move(e));
    }
    return out;
  }();
  return suite;
}

// ---------------------------------------------------------------------------
// 1. Largest eigenvalue of the symmetric block equals the largest singular
//    value.

Outcome BlockEigenvalue() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  double worst = 0.0;
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + rng() % 40;
    const std::size_t n = 1 + rng() % 60;
    const DenseMatrix k = oracle::RandomMatrix(m, n, rng);
    const double svd = oracle::DenseSvdMax(k);
    const double eig = oracle::DenseEigMax(BuildSymBlock(k).matrix);
    const double rel = std::abs(eig - svd) / svd;
    worst = std::max(worst, rel);
    if (rel > 1e-10) ++bad;
  }
  const double secs = Seconds(start);
  return Judge(bad == 0 && secs < 10.0,
               Fmt("200 matrices up to 40x60, max rel diff %.2e (limit 1e-10), "
                   "%d violations, %.2f s (limit 10 s)",
                   worst, bad, secs));
}

// ---------------------------------------------------------------------------
// 2. Lanczos norm estimation, exact and with injected product noise.

// K = U diag(s) V^T with random orthogonal U, V.
DenseMatrix KnownSpectrum(std::size_t m, std::size_t n, const Vector& s,
                          std::mt19937_64& rng) {
  auto orthogonal = [&](std::size_t d) {
    DenseMatrix q = oracle::RandomMatrix(d, d, rng);
    // Modified Gram-Schmidt on the columns.
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t p = 0; p < j; ++p) {
        double dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += q(i, j) * q(i, p);
        for (std::size_t i = 0; i < d; ++i) q(i, j) -= dot * q(i, p);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < d; ++i) norm += q(i, j) * q(i, j);
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < d; ++i) q(i, j) /= norm;
    }
    return q;
  };
  const DenseMatrix u = orthogonal(m);
  const DenseMatrix v = orthogonal(n);
  DenseMatrix k(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t r = 0; r < s.size(); ++r)
        sum += u(i, r) * s[r] * v(j, r);
      k(i, j) = sum;
    }
  }
  return k;
}

Outcome NormEstimation() {
  // Exact backend against the SVD oracle.
  std::mt19937_64 rng(2);
  double worst_exact = 0.0;
  int max_iters = 0;
  for (int t = 0; t < 50; ++t) {
    const DenseMatrix k =
        oracle::RandomMatrix(2 + rng() % 29, 2 + rng() % 39, rng);
    ExactBackend b;
    b.Encode(BuildSymBlock(k));
    LanczosOptions opts;
    opts.k_max = 50;
    opts.seed = t;
    const LanczosResult r = LanczosSvd(b, opts);
    const double ref = oracle::DenseSvdMax(k);
    worst_exact = std::max(worst_exact, std::abs(r.sigma1 - ref) / ref);
    max_iters = std::max(max_iters, r.iters_used);
  }
  const bool exact_ok = worst_exact <= 1e-8 && max_iters <= 50;

  // Injected noise of norm <= eps_max on every product, known spectrum with
  // sigma1 = 1 and sigma2 / sigma1 = 1/2.
  const double eps_max = 1e-6;
  const int k_max = 30;
  const std::size_t m = 20, n = 30;
  Vector s(m);
  s[0] = 1.0;
  for (std::size_t r = 1; r < m; ++r) {
    s[r] = 0.5 - 0.45 * static_cast<double>(r - 1) / (m - 2);
  }
  const double ratio = s[1] / s[0];
  std::mt19937_64 mrng(22);
  const DenseMatrix k = KnownSpectrum(m, n, s, mrng);
  const int seeds = 100;
  int whole_run_ok = 0;
  std::vector<int> ok_from(k_max + 2,
                           0);  // seeds satisfying the bound for all k' >= k
  std::map<int, int> first_violation;
  for (int seed = 0; seed < seeds; ++seed) {
    PerturbedBackend b(eps_max, 5000 + seed);
    b.Encode(BuildSymBlock(k));
    LanczosOptions opts;
    opts.k_max = k_max;
    opts.eps = 1e-14;
    opts.seed = 7000 + seed;
    const LanczosResult r = LanczosSvd(b, opts);
    const int steps = static_cast<int>(r.ritz_history.size());
    std::vector<bool> holds(steps + 1, true);
    int first_bad = 0;
    for (int j = 1; j <= steps; ++j) {
      const double err = std::abs(r.ritz_history[j - 1] - s[0]);
      const double bound = std::pow(ratio, 2 * j) + 10.0 * j * eps_max;
      holds[j] = err <= bound;
      if (!holds[j] && first_bad == 0) first_bad = j;
    }
    if (first_bad == 0) {
      ++whole_run_ok;
    } else {
      ++first_violation[first_bad];
    }
    int tail_start = steps + 1;
    while (tail_start > 1 && holds[tail_start - 1]) --tail_start;
    for (int j = tail_start; j <= k_max + 1; ++j) ++ok_from[j];
  }
  int k0 = k_max + 1;
  for (int j = 1; j <= k_max; ++j) {
    if (ok_from[j] >= 95) {
      k0 = j;
      break;
    }
  }
  std::string violations;
  for (const auto& [j, count] : first_violation) {
    violations += Fmt(" k=%d:%d", j, count);
  }
  const bool noisy_ok = whole_run_ok >= 95;
  return Judge(
      exact_ok && noisy_ok,
      Fmt("exact: 50 matrices, max rel err %.2e (limit 1e-8), max %d steps; "
          "noisy (eps_max 1e-6, ratio %.2f): %d/100 seeds satisfy the bound at "
          "every k (need 95); first violation at%s; bound holds for all k >= "
          "%d "
          "in >= 95 seeds",
          worst_exact, max_iters, ratio, whole_run_ok, violations.c_str(), k0));
}

// ---------------------------------------------------------------------------
// 3. Step-size coupling stays below one under bounded estimation error.

Outcome SafeCoupling() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const double l = std::pow(10.0, -3.0 + 6.0 * unit(rng));
    const double delta = 0.9 * unit(rng);
    const double limit = (1 - delta) * (1 - delta);
    double vartheta = limit * unit(rng);
    if (vartheta <= 0.0) vartheta = 0.5 * limit;
    // Every fourth draw takes the worst-case underestimate.
    const double l_hat =
        t % 4 == 0 ? (1 - delta) * l : l * (1 - delta + 2 * delta * unit(rng));
    const StepSizes steps = SafeCouplingSteps(l_hat, vartheta);
    const double coupling = steps.tau * steps.sigma * l * l;
    worst = std::max(worst, coupling);
    if (!(coupling < 1.0)) ++bad;
  }
  return Judge(bad == 0, Fmt("1000 draws, max tau*sigma*L^2 = %.6f, %d >= 1",
                             worst, bad));
}

// ---------------------------------------------------------------------------
// Telemetry audit shared by every solve in this binary.

struct AuditLog {
  int runs = 0;
  int energy_mismatch = 0;
  int latency_mismatch = 0;
  int mvm_mismatch = 0;
  int encode_mismatch = 0;
};

AuditLog& Audits() {
  static AuditLog log;
  return log;
}

void Audit(const Solution& s) {
  AuditLog& a = Audits();
  ++a.runs;
  const TelemetryLedger& t = s.telemetry;
  const Counters c = t.totals();
  const UnitCosts& u = t.costs();
  const double energy = static_cast<double>(c.n_write_pulses) * u.e_write +
                        static_cast<double>(c.n_cell_reads) * u.e_read;
  const double latency = static_cast<double>(c.n_write_pulses) * u.t_write +
                         static_cast<double>(c.n_mvm_calls) * u.t_read;
  if (t.energy_j() != energy) ++a.energy_mismatch;
  if (t.latency_s() != latency) ++a.latency_mismatch;
  if (t.phase_counters(Phase::kPdhg).n_mvm_calls !=
      2 * static_cast<std::uint64_t>(s.iterations)) {
    ++a.mvm_mismatch;
  }
  if (c.n_encodes != 1 || t.phase_counters(Phase::kEncode).n_encodes != 1) {
    ++a.encode_mismatch;
  }
}

Solution Solve(const StandardLp& lp, const PdhgConfig& cfg, Backend& b) {
  Solution s = PdhgSolve(lp, cfg, b);
  Audit(s);
  return s;
}

// ---------------------------------------------------------------------------
// 4. Exact-backend PDHG against the simplex oracle.

Outcome ExactSuite() {
  Vector errors;
  int bad_obj = 0, bad_res = 0, slow = 0;
  double worst_time = 0.0, worst_res = 0.0;
  for (std::size_t i = 0; i < Suite().size(); ++i) {
    const SuiteLp& e = Suite()[i];
    PdhgConfig cfg;
    cfg.seed = i;
    cfg.max_iters = 1000000;
    ExactBackend b;
    const auto start = Clock::now();
    const Solution s = Solve(e.lp, cfg, b);
    const double secs = Seconds(start);
    worst_time = std::max(worst_time, secs);
    const double err = RelErr(s.objective, e.reference);
    errors.push_back(err);
    worst_res = std::max(worst_res, s.scaled_residuals.max());
    if (err > 1e-4) ++bad_obj;
    if (s.status != SolveStatus::kOptimal ||
        !(s.scaled_residuals.max() <= 1e-6)) {
      ++bad_res;
    }
    if (secs > 60.0) ++slow;
  }
  const double worst = *std::max_element(errors.begin(), errors.end());
  return Judge(
      bad_obj == 0 && bad_res == 0 && slow == 0,
      Fmt("30 LPs: delta_rel median %.2e max %.2e (limit 1e-4); max "
          "scaled residual %.2e (limit 1e-6); slowest %.3f s (limit 60 "
          "s); reference gaps of order 1e-5..1e-4",
          Median(errors), worst, worst_res, worst_time));
}

// ---------------------------------------------------------------------------
// 5. Noisy RRAM backend, averaged over five seeds.

Outcome NoisySuite() {
  DeviceProfile p = *BundledProfile("taox-hfox");
  p.read_noise_sigma = 1e-3;
  Vector averaged;
  int over = 0, outside_band = 0;
  for (std::size_t i = 0; i < Suite().size(); ++i) {
    const SuiteLp& e = Suite()[i];
    double sum = 0.0;
    for (int seed = 0; seed < 5; ++seed) {
      PdhgConfig cfg;
      cfg.seed = seed;
      cfg.max_iters = 20000;
      RramBackend b(p, 100 * i + seed);
      const Solution s = Solve(e.lp, cfg, b);
      sum += RelErr(s.objective, e.reference);
    }
    const double avg = sum / 5;
    averaged.push_back(avg);
    if (avg > 1e-2) ++over;
    // Published RRAM gaps span 5e-6..3e-2; allow one order of magnitude.
    if (avg < 5e-7 || avg > 3e-1) ++outside_band;
  }
  const auto [lo, hi] = std::minmax_element(averaged.begin(), averaged.end());
  return Judge(over == 0 && outside_band == 0,
               Fmt("30 LPs x 5 seeds, read noise 1e-3: seed-averaged delta_rel "
                   "min %.2e median %.2e max %.2e (limit 1e-2, %d over); %d "
                   "outside [5e-7, 3e-1]",
                   *lo, Median(averaged), *hi, over, outside_band));
}

// ---------------------------------------------------------------------------
// 6. Telemetry accounting over every run in this process.

Outcome TelemetryAccounting() {
  // Runs of its own so that the criterion is meaningful in isolation.
  for (std::size_t i = 0; i < Suite().size(); ++i) {
    for (const char* name : {"exact", "epiram", "taox-hfox"}) {
      PdhgConfig cfg;
      cfg.seed = i;
      cfg.max_iters = 2000;
      if (std::string(name) == "exact") {
        ExactBackend b;
        Solve(Suite()[i].lp, cfg, b);
      } else {
        RramBackend b(*BundledProfile(name), i);
        Solve(Suite()[i].lp, cfg, b);
      }
    }
  }
  const AuditLog& a = Audits();
  return Judge(a.energy_mismatch == 0 && a.latency_mismatch == 0 &&
                   a.mvm_mismatch == 0 && a.encode_mismatch == 0,
               Fmt("%d runs audited: energy mismatches %d, latency mismatches "
                   "%d, pdhg mvm != 2*iterations %d, encode count != 1 %d",
                   a.runs, a.energy_mismatch, a.latency_mismatch,
                   a.mvm_mismatch, a.encode_mismatch));
}

// ---------------------------------------------------------------------------
// 7. Encoding energy dominates a single iteration.

Outcome WriteDominance() {
  double worst = kInfinity;
  std::string where;
  for (const std::string& name : BundledProfileNames()) {
    for (std::size_t i = 0; i < Suite().size(); ++i) {
      PdhgConfig cfg;
      cfg.seed = i;
      cfg.max_iters = 200;
      RramBackend b(*BundledProfile(name), i);
      const Solution s = Solve(Suite()[i].lp, cfg, b);
      const double per_iter = s.telemetry.energy_j(Phase::kPdhg) /
                              static_cast<double>(s.iterations);
      const double ratio = s.telemetry.energy_j(Phase::kEncode) / per_iter;
      if (ratio < worst) {
        worst = ratio;
        where = name + " instance " + std::to_string(i);
      }
    }
  }
  return Judge(worst >= 10.0,
               Fmt("min encode energy / per-iteration energy = %.1f (need >= "
                   "10) at %s",
                   worst, where.c_str()));
}

// ---------------------------------------------------------------------------
// 8. Ergodic gap decays like C/K; the noise plateau scales with the noise.

// Runs `iters` iterations of the scaled iteration and calls `visit(k, x)` with
// the unscaled primal iterate after every step.
void Iterate(const StandardLp& lp, const PdhgConfig& cfg, Backend& b,
             long long iters,
             const std::function<void(long long, const Vector&)>& visit) {
  const PdhgSetup setup = PreparePdhg(lp, cfg, b);
  PdhgState state = InitialState(setup, cfg);
  Vector x(lp.num_cols());
  for (long long k = 1; k <= iters; ++k) {
    PdhgIterate(state, setup.problem, b, cfg.gamma);
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = setup.scaling.col_scale[j] * state.x[j];
    }
    visit(k, x);
  }
}

Outcome ErgodicLaw() {
  // Exact part: L(x_avg, y*) - L(x*, y_avg) = lambda*^T x_avg with
  // lambda* = c - K^T y*, averaged over 20 instances.
  std::vector<long long> grid;
  for (long long k = 100; k <= 2000; k += 100) grid.push_back(k);
  Vector mean_gap(grid.size(), 0.0);
  for (int i = 0; i < 20; ++i) {
    const SuiteLp& e = Suite()[i];
    const Vector kty = MultiplyTransposed(e.lp.matrix, e.dual);
    Vector lambda(e.lp.num_cols());
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      lambda[j] = std::max(0.0, e.lp.cost[j] - kty[j]);
    }
    PdhgConfig cfg;
    cfg.seed = i;
    ExactBackend b;
    Vector sum(e.lp.num_cols(), 0.0);
    std::size_t g = 0;
    Iterate(e.lp, cfg, b, grid.back(), [&](long long k, const Vector& x) {
      for (std::size_t j = 0; j < x.size(); ++j) sum[j] += x[j];
      if (g < grid.size() && k == grid[g]) {
        mean_gap[g] += Dot(lambda, sum) / static_cast<double>(k) / 20.0;
        ++g;
      }
    });
  }
  // Fit log gap = log C - log K.
  double log_c = 0.0, mean_log = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    log_c += std::log(mean_gap[g]) + std::log(static_cast<double>(grid[g]));
    mean_log += std::log(mean_gap[g]);
  }
  log_c /= grid.size();
  mean_log /= grid.size();
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double y = std::log(mean_gap[g]);
    const double fit = log_c - std::log(static_cast<double>(grid[g]));
    ss_res += (y - fit) * (y - fit);
    ss_tot += (y - mean_log) * (y - mean_log);
  }
  const double r2 = 1.0 - ss_res / ss_tot;

  // Noisy part: RMS relative objective error of the last iterate over the
  // final 5000 of 20000 iterations, noiseless writes, 2^16 levels.
  auto plateau = [&](double delta) {
    DeviceProfile p = *BundledProfile("taox-hfox");
    p.write_noise_sigma = 0.0;
    p.levels = 1 << 16;
    p.read_noise_sigma = delta;
    double total = 0.0;
    int count = 0;
    for (int i = 0; i < 10; ++i) {
      const SuiteLp& e = Suite()[i];
      for (int seed = 0; seed < 3; ++seed) {
        PdhgConfig cfg;
        cfg.seed = seed;
        RramBackend b(p, 31 * i + seed);
        double sq = 0.0;
        int n = 0;
        Iterate(e.lp, cfg, b, 20000, [&](long long k, const Vector& x) {
          if (k <= 15000) return;
          const double err = RelErr(Dot(e.lp.cost, x), e.reference);
          sq += err * err;
          ++n;
        });
        total += std::sqrt(sq / n);
        ++count;
      }
    }
    return total / count;
  };
  const double floor = plateau(0.0);
  const double low = plateau(1e-3);
  const double high = plateau(1e-2);
  const double ratio = high / low;
  return Judge(
      r2 >= 0.9 && ratio >= 2.0 && ratio <= 50.0,
      Fmt("exact: mean ergodic gap %.3e at K=100 and %.3e at K=2000, "
          "C/K fit R^2 = %.4f (need >= 0.9); noisy: plateau %.3e at "
          "1e-3 and %.3e at 1e-2 (%.3e without read noise), ratio "
          "%.2f (need 2..50)",
          mean_gap.front(), mean_gap.back(), r2, low, high, floor, ratio));
}

// ---------------------------------------------------------------------------
// 9. Noise-free RRAM degenerates to the exact backend.

Outcome NoiselessDegeneration() {
  DeviceProfile p = *BundledProfile("taox-hfox");
  p.write_noise_sigma = 0.0;
  p.read_noise_sigma = 0.0;
  p.levels = 1 << 16;

  std::mt19937_64 rng(9);
  const DenseMatrix k = oracle::RandomMatrix(40, 60, rng);
  RramBackend rram(p, 9);
  ExactBackend exact;
  rram.Encode(BuildSymBlock(k));
  exact.Encode(BuildSymBlock(k));
  const double col_scale = rram.array().col_scale();
  int mvm_bad = 0;
  double worst_frac = 0.0;
  std::normal_distribution<double> normal;
  for (int t = 0; t < 20; ++t) {
    Vector v(100);
    for (double& x : v) x = normal(rng);
    const Vector a = rram.Mvm(v);
    const Vector b = exact.Mvm(v);
    const double bound =
        (p.g_max - p.g_min) / (p.levels * col_scale) * Norm1(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = std::abs(a[i] - b[i]);
      worst_frac = std::max(worst_frac, d / bound);
      if (d > bound) ++mvm_bad;
    }
  }

  Vector diffs;
  int solve_bad = 0;
  for (std::size_t i = 0; i < Suite().size(); ++i) {
    PdhgConfig cfg;
    cfg.seed = i;
    cfg.max_iters = 1000000;
    ExactBackend eb;
    RramBackend rb(p, i);
    const Solution se = Solve(Suite()[i].lp, cfg, eb);
    const Solution sr = Solve(Suite()[i].lp, cfg, rb);
    const double d = RelErr(sr.objective, se.objective);
    diffs.push_back(d);
    if (d > 1e-6) ++solve_bad;
  }
  return Judge(
      mvm_bad == 0 && solve_bad == 0,
      Fmt("20 products: max error %.3f of the quantization bound, %d "
          "violations; 30 solves: relative objective difference median "
          "%.2e max %.2e, %d above 1e-6",
          worst_frac, mvm_bad, Median(diffs),
          *std::max_element(diffs.begin(), diffs.end()), solve_bad));
}

// ---------------------------------------------------------------------------
// 10. gen-ip002 relaxation (informational).

Outcome GenIp002() {
  const char* path = std::getenv("IMLP_GEN_IP002");
  if (path == nullptr || !std::filesystem::exists(path)) {
    return {Verdict::kSkip,
            "set IMLP_GEN_IP002 to the gen-ip002 MPS file to run this check"};
  }
  const LpProblem problem = LoadProblem(path, GuessProblemFormat(path));
  const StandardLp lp = ToStandardForm(problem);
  PdhgConfig cfg;
  cfg.max_iters = 1000000;
  ExactBackend b;
  const Solution s = Solve(lp, cfg, b);
  const Vector x = RecoverSolution(lp, s.x);
  const double objective = Dot(problem.cost, x) + problem.objective_offset;
  return Judge(
      s.status == SolveStatus::kOptimal && s.scaled_residuals.max() <= 1e-6,
      Fmt("%zu x %zu standard form, status %s after %lld iterations, "
          "scaled residual %.2e; relaxation objective %.6f vs integer "
          "optimum -4783.7334 (not gated)",
          lp.num_rows(), lp.num_cols(),
          std::string(StatusName(s.status)).c_str(), s.iterations,
          s.scaled_residuals.max(), objective));
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "block eigenvalue equals largest singular value", BlockEigenvalue},
    {2, "Lanczos norm estimation", NormEstimation},
    {3, "safe step-size coupling", SafeCoupling},
    {4, "exact-backend PDHG vs simplex", ExactSuite},
    {5, "noisy RRAM robustness", NoisySuite},
    {6, "telemetry accounting", TelemetryAccounting},
    {7, "encode energy dominance", WriteDominance},
    {8, "ergodic convergence and noise plateau", ErgodicLaw},
    {9, "noise-free RRAM matches exact", NoiselessDegeneration},
    {10, "gen-ip002 relaxation (informational)", GenIp002},
};

}  // namespace
}  // namespace imlp::acceptance

int main(int argc, char** argv) {
  using namespace imlp::acceptance;
  CLI::App app{"imlp acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-10)")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Verdict::kFail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::kPass   ? "[PASS]"
                      : o.verdict == Verdict::kSkip ? "[SKIP]"
                                                    : "[FAIL]";
    if (o.verdict == Verdict::kFail) ++failures;
    std::printf("%s %2d %s: %s (%.1f s)\n", tag, c.id, c.name, o.detail.c_str(),
                Seconds(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
