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

#include "imlp/accel.hpp"

#include <algorithm>
#include <cmath>

#include "imlp/error.hpp"

namespace imlp {

SymBlock BuildSymBlock(const DenseMatrix& k) {
  const std::size_t m = k.rows();
  const std::size_t n = k.cols();
  SymBlock out{DenseMatrix(m + n, m + n), m, n};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.matrix(i, m + j) = k(i, j);
      out.matrix(m + j, i) = k(i, j);
    }
  }
  return out;
}

void Backend::Encode(const SymBlock& block) {
  if (encoded_) throw Error("backend already holds an encoded matrix");
  if (block.matrix.rows() != block.dim() ||
      block.matrix.cols() != block.dim()) {
    throw DimensionError("SymBlock matrix does not match m + n");
  }
  DoEncode(block);
  m_ = block.m;
  n_ = block.n;
  encoded_ = true;
  telemetry_.RecordEncode();
}

Vector Backend::Mvm(std::span<const double> v, LaneRange active) {
  if (!encoded_) throw Error("Mvm called before Encode");
  if (v.size() != dim()) {
    throw DimensionError("Mvm input has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(dim()));
  }
  if (active.begin > active.end || active.end > dim()) {
    throw DimensionError("active lane range out of bounds");
  }
  telemetry_.RecordMvm();
  return DoMvm(v, active);
}

void ExactBackend::DoEncode(const SymBlock& block) { matrix_ = block.matrix; }

Vector ExactBackend::DoMvm(std::span<const double> v, LaneRange active) {
  const std::size_t d = matrix_.rows();
  Vector w(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    const auto row = matrix_.row(i);
    double s = 0.0;
    for (std::size_t j = active.begin; j < active.end; ++j) s += row[j] * v[j];
    w[i] = s;
  }
  ledger().RecordCellReads(static_cast<std::uint64_t>(d) *
                           (active.end - active.begin));
  return w;
}

Vector PerturbedBackend::DoMvm(std::span<const double> v, LaneRange active) {
  Vector w = ExactBackend::DoMvm(v, active);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Vector e(w.size());
  for (double& x : e) x = normal(rng_);
  const double norm = Norm2(e);
  const double radius = eps_max_ * uniform(rng_);
  for (double& x : e) x = norm > 0.0 ? x * radius / norm : 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += e[i];
  if (log_noise_) noise_log_.push_back(std::move(e));
  return w;
}

Vector MatmulAccel(Backend& backend, std::span<const double> u, MvmMode mode) {
  const std::size_t m = backend.m();
  const std::size_t n = backend.n();
  switch (mode) {
    case MvmMode::kFull:
      if (u.size() != m + n) {
        throw DimensionError("full mode expects length m + n");
      }
      return backend.Mvm(u, {0, m + n});
    case MvmMode::kAx: {
      if (u.size() != n) throw DimensionError("A@x mode expects length n");
      Vector padded(m + n, 0.0);
      std::copy(u.begin(), u.end(), padded.begin() + m);
      Vector w = backend.Mvm(padded, {m, m + n});
      w.resize(m);
      return w;
    }
    case MvmMode::kATy: {
      if (u.size() != m) throw DimensionError("AT@y mode expects length m");
      Vector padded(m + n, 0.0);
      std::copy(u.begin(), u.end(), padded.begin());
      Vector w = backend.Mvm(padded, {0, m});
      return Vector(w.begin() + m, w.end());
    }
  }
  throw Error("unknown MVM mode");
}

}  // namespace imlp
