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

#include "histlab/states.hpp"

#include <cmath>
#include <stdexcept>

#include "histlab/eig.hpp"
#include "histlab/kernels.hpp"

namespace histlab {

Ket Ket::basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::invalid_argument("Ket::basis_state: index out of range");
  Ket k(std::vector<Complex>(dim, Complex{0.0, 0.0}));
  k.amplitudes[index] = 1.0;
  return k;
}

Ket Ket::uniform(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("Ket::uniform: dimension must be positive");
  return Ket(std::vector<Complex>(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0}));
}

double Ket::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes) acc += std::norm(a);
  return std::sqrt(acc);
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n < 1e-12) throw std::invalid_argument("Ket::normalized: vector has (near-)zero norm");
  Ket out = *this;
  for (auto& a : out.amplitudes) a /= n;
  return out;
}

void Ket::validate(double tol) const {
  if (amplitudes.empty()) throw std::invalid_argument("Ket: empty state vector");
  for (const auto& a : amplitudes)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("Ket: non-finite amplitude");
  if (std::abs(norm() - 1.0) > tol)
    throw std::invalid_argument("Ket: state vector is not normalized");
}

ComplexMatrix Ket::projector() const {
  const std::size_t d = dim();
  ComplexMatrix p(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) p(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
  return p;
}

ComplexMatrix Ket::column() const {
  ComplexMatrix m(dim(), 1);
  for (std::size_t r = 0; r < dim(); ++r) m(r, 0) = amplitudes[r];
  return m;
}

Complex inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  return acc;
}

double fidelity(const Ket& a, const Ket& b) { return std::norm(inner(a, b)); }

Ket tensor(const Ket& a, const Ket& b) { return Ket(vec_kron(a.amplitudes, b.amplitudes)); }

DensityMatrix DensityMatrix::from_ket(const Ket& k) { return DensityMatrix(k.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("DensityMatrix: dimension must be positive");
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

void DensityMatrix::validate(double tol) const {
  if (!mat.is_square() || mat.rows() == 0)
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  if (!mat.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (!mat.is_hermitian(tol)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat.trace() - Complex{1.0, 0.0}) > tol)
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  if (!is_psd(mat, tol))
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

double DensityMatrix::purity() const { return matmul(mat, mat).trace().real(); }

UnitaryOp UnitaryOp::identity(std::size_t dim) {
  return UnitaryOp(ComplexMatrix::identity(dim));
}

void UnitaryOp::validate(double tol) const {
  if (!mat.is_square() || mat.rows() == 0)
    throw std::invalid_argument("UnitaryOp: matrix must be square and non-empty");
  if (!mat.all_finite()) throw std::invalid_argument("UnitaryOp: non-finite entries");
  if (!mat.is_unitary(tol)) throw std::invalid_argument("UnitaryOp: matrix is not unitary");
}

OrthonormalBasis OrthonormalBasis::computational(std::size_t dim) {
  return OrthonormalBasis(ComplexMatrix::identity(dim));
}

Ket OrthonormalBasis::vector(std::size_t k) const {
  if (k >= vectors.cols()) throw std::invalid_argument("OrthonormalBasis: index out of range");
  std::vector<Complex> amps(vectors.rows());
  for (std::size_t r = 0; r < vectors.rows(); ++r) amps[r] = vectors(r, k);
  return Ket(std::move(amps));
}

void OrthonormalBasis::validate(double tol) const {
  if (!vectors.is_square() || vectors.rows() == 0)
    throw std::invalid_argument("OrthonormalBasis: need a square set of column vectors");
  if (!vectors.is_unitary(tol))
    throw std::invalid_argument("OrthonormalBasis: columns are not orthonormal");
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m(0, 1) = Complex{0.0, -1.0};
  m(1, 0) = Complex{0.0, 1.0};
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(2, 2);
  m(0, 0) = s;
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 1) = -s;
  return m;
}

ComplexMatrix rotation_y(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  ComplexMatrix m(2, 2);
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

ComplexMatrix rotation_z(double theta) {
  ComplexMatrix m(2, 2);
  m(0, 0) = std::polar(1.0, -theta / 2.0);
  m(1, 1) = std::polar(1.0, theta / 2.0);
  return m;
}

ComplexMatrix builtin_matrix(const std::string& name) {
  if (name == "I") return ComplexMatrix::identity(2);
  if (name == "X") return pauli_x();
  if (name == "Y") return pauli_y();
  if (name == "Z") return pauli_z();
  if (name == "H") return hadamard();
  throw std::invalid_argument("builtin_matrix: unknown name '" + name +
                              "' (expected I, X, Y, Z or H)");
}

double real_expectation(const ComplexMatrix& rho, const ComplexMatrix& obs) {
  if (rho.rows() != obs.rows() || !rho.is_square() || !obs.is_square())
    throw std::invalid_argument("real_expectation: shape mismatch");
  const Complex t = matmul(rho, obs).trace();
  if (std::abs(t.imag()) > 1e-9 * std::max(1.0, std::abs(t.real())) + 1e-9)
    throw std::runtime_error("real_expectation: trace has a large imaginary part");
  return t.real();
}

}  // namespace histlab
