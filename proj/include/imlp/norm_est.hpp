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

// Operator-norm estimation for step-size selection.

#ifndef IMLP_NORM_EST_HPP_
#define IMLP_NORM_EST_HPP_

#include <cstdint>
#include <span>

#include "imlp/accel.hpp"
#include "imlp/dense.hpp"

namespace imlp {

struct LanczosResult {
  double sigma1 = 0.0;  // max |ritz_values|
  Vector alphas;        // diagonal of T
  Vector betas;         // betas[j] couples steps j and j + 1
  int iters_used = 0;
  Vector ritz_values;              // eigenvalues of the final T, ascending
  bool converged = false;          // a beta fell below eps
  Vector ritz_history;             // max |Ritz value| after each step
  double averaged_estimate = 0.0;  // mean of ritz_history
};

struct LanczosOptions {
  int k_max = 100;
  double eps = 1e-10;
  std::uint64_t seed = 0;
};

// Lanczos on the encoded block M with full reorthogonalization. All products
// go through MatmulAccel in full mode. The run stops after k_max steps, after
// m + n steps, or when the next beta drops below eps.
LanczosResult LanczosSvd(Backend& backend, const LanczosOptions& options);

// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal
// `alphas` and off-diagonal betas[0..k-2]; betas[k-1] is ignored. Implicit
// QL with Wilkinson shifts.
Vector TridiagEigenvalues(std::span<const double> alphas,
                          std::span<const double> betas);

// sqrt of the Rayleigh quotient of K^T K after `iters` normalized power steps.
double PowerIterationNorm(const DenseMatrix& k, int iters, std::uint64_t seed);

struct StepSizes {
  double tau = 0.0;
  double sigma = 0.0;
};

// tau = sigma = sqrt(vartheta) / l_hat, so tau * sigma * l_hat^2 = vartheta.
StepSizes SafeCouplingSteps(double l_hat, double vartheta);

// tau = sigma = eta / sigma1. Throws ValidationError unless sigma1 > 0 and
// 0 < eta < 1.
StepSizes DeriveStepSizes(double sigma1, double eta);

}  // namespace imlp

#endif  // IMLP_NORM_EST_HPP_
