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

#include <cstddef>
#include <vector>

#include "histlab/complex_matrix.hpp"

namespace histlab {

// Data-parallel kernels on matrices and product-space state vectors.
//
// The functions in this namespace are the default entry points; they
// parallelize over independent output elements with OpenMP when the work
// is large enough, so results are bit-identical to the serial versions in
// histlab::serial regardless of thread count. Tests compare the two
// implementations exactly; the bench target compares their throughput.
//
// Tensor-factor convention used everywhere: factor 0 is the LEFTMOST
// (slowest) Kronecker index. Composite index of (i_0, ..., i_{m-1}) is
//   x = ((i_0 * d_1 + i_1) * d_2 + i_2) ...
// For history states the leftmost factor is the latest instant.

/// Kronecker product with `a` as the leftmost (slow) factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix product a*b.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix-vector product m*v.
std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& v);

/// Partial trace of a square matrix over the factors NOT listed in `keep`.
/// `dims` are the factor dimensions (slowest first) and must multiply to
/// the matrix dimension; `keep` is a strictly increasing, nonempty list of
/// factor indices. Kept factors retain their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);

/// Reduced density matrix rho[a,b] = sum_rest psi[a,rest] * conj(psi[b,rest])
/// of a pure product-space vector, keeping the factors in `keep`.
ComplexMatrix reduced_density(const std::vector<Complex>& psi,
                              const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& keep);

/// Apply a d x d gate to factor `pos` of a product-space vector, in place.
void apply_factor_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                       std::size_t pos, const ComplexMatrix& gate);

/// Apply a (dA*dB) x (dA*dB) gate to factors `pos_a` < `pos_b` (factor
/// `pos_a` is the slow index of the gate), in place.
void apply_pair_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                     std::size_t pos_a, std::size_t pos_b, const ComplexMatrix& gate);

/// Reorder tensor factors: `perm[new_pos] = old_pos`. Returns the permuted
/// vector; also writes the permuted dims through `out_dims` if non-null.
std::vector<Complex> permute_factors(const std::vector<Complex>& psi,
                                     const std::vector<std::size_t>& dims,
                                     const std::vector<std::size_t>& perm,
                                     std::vector<std::size_t>* out_dims = nullptr);

/// Kronecker product of state vectors, `a` slow.
std::vector<Complex> vec_kron(const std::vector<Complex>& a, const std::vector<Complex>& b);

namespace serial {

// Straight-loop reference implementations, kept deliberately simple and
// used by the test suite to pin down the parallel kernels.

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& v);
ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep);
ComplexMatrix reduced_density(const std::vector<Complex>& psi,
                              const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& keep);
void apply_factor_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                       std::size_t pos, const ComplexMatrix& gate);
void apply_pair_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                     std::size_t pos_a, std::size_t pos_b, const ComplexMatrix& gate);

}  // namespace serial

}  // namespace histlab
