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

#ifndef HISTLAB_EIG_HPP
#define HISTLAB_EIG_HPP

#include <functional>
#include <vector>

#include "histlab/complex_matrix.hpp"

namespace histlab {

// Eigendecomposition of a Hermitian matrix.  Eigenvalues are real and sorted
// in descending order; column k of `eigenvectors` is a unit eigenvector for
// eigenvalues[k].
struct EighResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

// Cyclic Jacobi diagonalization with complex plane rotations.  The input must
// be Hermitian within hermiticity_tol; the solver works on the Hermitian part
// (m + m^dagger)/2 so roundoff-level asymmetry is harmless.
EighResult eigh_hermitian(const ComplexMatrix& m, double hermiticity_tol = kDefaultTol);

// Eigenvalues only, descending.
std::vector<double> eigvals_hermitian(const ComplexMatrix& m,
                                      double hermiticity_tol = kDefaultTol);

// Sum of singular values.  Works for any rectangular matrix; for a Hermitian
// argument it equals the sum of absolute eigenvalues.
double trace_norm(const ComplexMatrix& m);

// True when m is Hermitian and its smallest eigenvalue is >= -tol.
bool is_psd(const ComplexMatrix& m, double tol = kDefaultTol);

// V f(diag) V^dagger for Hermitian input, e.g. a matrix exponential with
// f(x) = exp(-i x t) or an inverse square root with a null-space cutoff.
ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<Complex(double)>& f);

}  // namespace histlab

#endif  // HISTLAB_EIG_HPP
