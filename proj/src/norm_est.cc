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

#include "imlp/norm_est.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "imlp/error.hpp"

namespace imlp {

Vector TridiagEigenvalues(std::span<const double> alphas,
                          std::span<const double> betas) {
  const int n = static_cast<int>(alphas.size());
  Vector d(alphas.begin(), alphas.end());
  Vector e(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i + 1 < n && i < static_cast<int>(betas.size()); ++i) {
    e[i] = betas[i];
  }
  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
          break;
      }
      if (m == l) break;
      if (iter == 60) throw Error("tridiagonal QL did not converge");
      // Wilkinson shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

LanczosResult LanczosSvd(Backend& backend, const LanczosOptions& options) {
  if (options.k_max < 1) throw ValidationError("k_max must be >= 1");
  if (!(options.eps > 0.0)) throw ValidationError("eps must be > 0");
  const std::size_t d = backend.dim();
  LanczosResult out;
  if (d == 0) return out;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Vector v(d);
  for (double& x : v) x = normal(rng);
  double nv = Norm2(v);
  for (double& x : v) x /= nv;

  const int k_limit = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(options.k_max), d));
  std::vector<Vector> basis{v};
  Vector v_prev(d, 0.0);
  double beta = 0.0;
  for (int j = 0; j < k_limit; ++j) {
    const Vector& vj = basis.back();
    Vector w = MatmulAccel(backend, vj, MvmMode::kFull);
    for (std::size_t i = 0; i < d; ++i) w[i] -= beta * v_prev[i];
    const double alpha = Dot(vj, w);
    for (std::size_t i = 0; i < d; ++i) w[i] -= alpha * vj[i];
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) {
        const double h = Dot(q, w);
        for (std::size_t i = 0; i < d; ++i) w[i] -= h * q[i];
      }
    }
    beta = Norm2(w);
    out.alphas.push_back(alpha);
    out.betas.push_back(beta);
    ++out.iters_used;

    const Vector ritz = TridiagEigenvalues(out.alphas, out.betas);
    out.ritz_history.push_back(
        std::max(std::abs(ritz.front()), std::abs(ritz.back())));
    if (beta < options.eps) {
      out.converged = true;
      break;
    }
    v_prev = vj;
    for (double& x : w) x /= beta;
    basis.push_back(std::move(w));
  }
  out.ritz_values = TridiagEigenvalues(out.alphas, out.betas);
  out.sigma1 = out.ritz_history.back();
  double sum = 0.0;
  for (double r : out.ritz_history) sum += r;
  out.averaged_estimate = sum / static_cast<double>(out.ritz_history.size());
  return out;
}

double PowerIterationNorm(const DenseMatrix& k, int iters, std::uint64_t seed) {
  if (iters < 1) throw ValidationError("iters must be >= 1");
  const std::size_t n = k.cols();
  if (n == 0 || k.MaxAbs() == 0.0) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (double& x : v) x = normal(rng);
  double nv = Norm2(v);
  for (double& x : v) x /= nv;
  for (int it = 0; it < iters; ++it) {
    Vector w = MultiplyTransposed(k, Multiply(k, v));
    const double nw = Norm2(w);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  // Rayleigh quotient v^T K^T K v = ||K v||^2 for unit v.
  return Norm2(Multiply(k, v));
}

StepSizes SafeCouplingSteps(double l_hat, double vartheta) {
  if (!(l_hat > 0.0) || !std::isfinite(l_hat)) {
    throw ValidationError("norm estimate must be positive and finite");
  }
  if (!(vartheta > 0.0)) throw ValidationError("coupling must be positive");
  const double step = std::sqrt(vartheta) / l_hat;
  return {step, step};
}

StepSizes DeriveStepSizes(double sigma1, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw ValidationError("eta must be in (0, 1)");
  if (!(sigma1 > 0.0) || !std::isfinite(sigma1)) {
    throw ValidationError("sigma1 must be positive and finite");
  }
  return {eta / sigma1, eta / sigma1};
}

}  // namespace imlp
