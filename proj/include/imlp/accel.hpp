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

// The accelerator abstraction. The LP matrix K (m x n) is embedded once in
//
//       M = [ 0   K ]
//           [ K^T 0 ]
//
// and every product the solver needs (K x, K^T y) is a padded product with M.

#ifndef IMLP_ACCEL_HPP_
#define IMLP_ACCEL_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "imlp/dense.hpp"
#include "imlp/telemetry.hpp"

namespace imlp {

struct SymBlock {
  DenseMatrix matrix;  // (m + n) x (m + n)
  std::size_t m = 0;
  std::size_t n = 0;

  std::size_t dim() const { return m + n; }
};

SymBlock BuildSymBlock(const DenseMatrix& k);

enum class MvmMode { kFull, kAx, kATy };

// Half-open range of input lanes that may be nonzero in one product.
struct LaneRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// A device holding one encoded SymBlock. Encode() may be called once; Mvm()
// takes and returns full-length (m + n) vectors.
class Backend {
 public:
  explicit Backend(UnitCosts costs = {}) : telemetry_(costs) {}
  virtual ~Backend() = default;
  Backend(const Backend&) = delete;
  Backend& operator=(const Backend&) = delete;

  // Throws Error on a second call.
  void Encode(const SymBlock& block);
  // w = M v (+ backend noise). Throws DimensionError on a length mismatch and
  // Error before Encode().
  Vector Mvm(std::span<const double> v, LaneRange active);
  Vector Mvm(std::span<const double> v) { return Mvm(v, {0, dim()}); }

  bool encoded() const { return encoded_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t dim() const { return m_ + n_; }

  const TelemetryLedger& telemetry() const { return telemetry_; }
  void set_phase(Phase phase) { telemetry_.set_phase(phase); }

 protected:
  virtual void DoEncode(const SymBlock& block) = 0;
  virtual Vector DoMvm(std::span<const double> v, LaneRange active) = 0;

  TelemetryLedger& ledger() { return telemetry_; }

 private:
  TelemetryLedger telemetry_;
  bool encoded_ = false;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
};

// Exact dense products. Unit costs default to zero; reads are still counted
// (one per logical matrix entry touched).
class ExactBackend : public Backend {
 public:
  explicit ExactBackend(UnitCosts costs = {}) : Backend(costs) {}

 protected:
  void DoEncode(const SymBlock& block) override;
  Vector DoMvm(std::span<const double> v, LaneRange active) override;

  const DenseMatrix& matrix() const { return matrix_; }

 private:
  DenseMatrix matrix_;
};

// Exact products plus an additive perturbation e with ||e||_2 <= eps_max:
// a uniformly random direction scaled by a radius drawn from U[0, eps_max].
// Optionally records every realization, for tests that need the noise terms.
class PerturbedBackend : public ExactBackend {
 public:
  PerturbedBackend(double eps_max, std::uint64_t seed, bool log_noise = false)
      : eps_max_(eps_max), rng_(seed), log_noise_(log_noise) {}

  const std::vector<Vector>& noise_log() const { return noise_log_; }

 protected:
  Vector DoMvm(std::span<const double> v, LaneRange active) override;

 private:
  double eps_max_;
  std::mt19937_64 rng_;
  bool log_noise_;
  std::vector<Vector> noise_log_;
};

// Padded dispatch:
//   kFull: u has length m + n, returns M u;
//   kAx:   u has length n, returns the first m entries of M [0; u] = K u;
//   kATy:  u has length m, returns the last n entries of M [u; 0] = K^T u.
Vector MatmulAccel(Backend& backend, std::span<const double> u, MvmMode mode);

}  // namespace imlp

#endif  // IMLP_ACCEL_HPP_
