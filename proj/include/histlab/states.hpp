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

#ifndef HISTLAB_STATES_HPP
#define HISTLAB_STATES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "histlab/complex_matrix.hpp"

namespace histlab {

// Pure state vector.  Construction does not normalize; call validate() where
// a normalized state is required.
struct Ket {
  std::vector<Complex> amplitudes;

  Ket() = default;
  explicit Ket(std::vector<Complex> amps) : amplitudes(std::move(amps)) {}

  static Ket basis_state(std::size_t dim, std::size_t index);
  static Ket uniform(std::size_t dim);

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
  Ket normalized() const;  // throws on (near-)zero vectors
  void validate(double tol = kDefaultTol) const;
  ComplexMatrix projector() const;  // |psi><psi|
  ComplexMatrix column() const;     // dim x 1 matrix view
};

Complex inner(const Ket& a, const Ket& b);    // <a|b>
double fidelity(const Ket& a, const Ket& b);  // |<a|b>|^2, both normalized by caller
Ket tensor(const Ket& a, const Ket& b);

struct DensityMatrix {
  ComplexMatrix mat;

  DensityMatrix() = default;
  explicit DensityMatrix(ComplexMatrix m) : mat(std::move(m)) {}

  static DensityMatrix from_ket(const Ket& k);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return mat.rows(); }
  // Hermitian, unit trace, positive semidefinite (all within tol).
  void validate(double tol = kDefaultTol) const;
  double purity() const;  // tr(rho^2)
};

struct UnitaryOp {
  ComplexMatrix mat;

  UnitaryOp() = default;
  explicit UnitaryOp(ComplexMatrix m) : mat(std::move(m)) {}

  static UnitaryOp identity(std::size_t dim);

  std::size_t dim() const { return mat.rows(); }
  void validate(double tol = kDefaultTol) const;
};

// Orthonormal basis stored as the unitary whose columns are the basis
// vectors, so `vectors` maps computational coordinates to this frame.
struct OrthonormalBasis {
  ComplexMatrix vectors;

  OrthonormalBasis() = default;
  explicit OrthonormalBasis(ComplexMatrix v) : vectors(std::move(v)) {}

  static OrthonormalBasis computational(std::size_t dim);

  std::size_t dim() const { return vectors.rows(); }
  Ket vector(std::size_t k) const;
  void validate(double tol = kDefaultTol) const;
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();
ComplexMatrix rotation_y(double theta);  // exp(-i theta Y / 2)
ComplexMatrix rotation_z(double theta);  // exp(-i theta Z / 2)

// Lookup for the single-character names accepted in scenario files:
// "I", "X", "Y", "Z", "H".  Throws on anything else.
ComplexMatrix builtin_matrix(const std::string& name);

// Real part of tr(rho * obs); throws if the trace has a significant
// imaginary part (both arguments are expected to be Hermitian).
double real_expectation(const ComplexMatrix& rho, const ComplexMatrix& obs);

}  // namespace histlab

#endif  // HISTLAB_STATES_HPP
