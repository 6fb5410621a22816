// Copyright 2026 The Histlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace histlab {

using Complex = std::complex<double>;

/// Default tolerance for validating quantum-mechanical invariants
/// (hermiticity, unit trace, unitarity, orthonormality).
inline constexpr double kDefaultTol = 1e-9;

/// Hard ceiling on any composite (tensor-product) dimension. Operations that
/// would build a larger space throw instead of thrashing memory.
inline constexpr std::size_t kMaxCompositeDim = std::size_t{1} << 20;

/// Dense complex matrix, row-major. The workhorse value type of the
/// library: states, operators, channels and reports all bottom out here.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  ComplexMatrix dagger() const;
  Complex trace() const;

  /// Largest entry magnitude; zero for an empty matrix.
  double max_abs() const;
  /// Largest entrywise difference |a-b|; matrices must have equal shape.
  double max_abs_diff(const ComplexMatrix& other) const;

  bool all_finite() const;
  bool is_hermitian(double tol = kDefaultTol) const;
  bool is_unitary(double tol = kDefaultTol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Matrix product (dispatches to the parallel kernel); declared here so
/// `a * b` works wherever the type is visible.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace histlab
