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

// Minimal dense linear algebra used across the solver. Matrices are row-major
// and small enough (a few hundred rows at most) that dense storage is the
// simplest correct choice.

#ifndef IMLP_DENSE_HPP_
#define IMLP_DENSE_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace imlp {

using Vector = std::vector<double>;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // Row-by-row literal, e.g. DenseMatrix{{1, 2}, {3, 4}}.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  DenseMatrix Transposed() const;
  double MaxAbs() const;

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// y = A x
Vector Multiply(const DenseMatrix& a, std::span<const double> x);
// y = A^T x
Vector MultiplyTransposed(const DenseMatrix& a, std::span<const double> x);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm2(std::span<const double> v);
double NormInf(std::span<const double> v);
double Norm1(std::span<const double> v);

// a - b, elementwise.
Vector Subtract(std::span<const double> a, std::span<const double> b);

}  // namespace imlp

#endif  // IMLP_DENSE_HPP_
