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

#include "histlab/random.hpp"

#include <cmath>
#include <stdexcept>

namespace histlab {

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.complex_normal();
  return m;
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_unitary: dimension must be positive");
  ComplexMatrix a = random_ginibre(dim, dim, rng);
  // Modified Gram-Schmidt; dividing by the real positive column norm fixes
  // the R diagonal phases, which is what makes the result Haar distributed.
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      Complex proj{0.0, 0.0};
      for (std::size_t r = 0; r < dim; ++r) proj += std::conj(a(r, prev)) * a(r, c);
      for (std::size_t r = 0; r < dim; ++r) a(r, c) -= proj * a(r, prev);
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(a(r, c));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) throw std::runtime_error("random_unitary: degenerate Ginibre sample");
    for (std::size_t r = 0; r < dim; ++r) a(r, c) /= nrm;
  }
  return a;
}

Ket random_ket(std::size_t dim, Rng& rng) {
  if (dim == 0) throw std::invalid_argument("random_ket: dimension must be positive");
  std::vector<Complex> amps(dim);
  for (auto& v : amps) v = rng.complex_normal();
  return Ket(std::move(amps)).normalized();
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  ComplexMatrix h(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) h(r, c) = 0.5 * (g(r, c) + std::conj(g(c, r)));
  return h;
}

DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (dim == 0 || rank == 0)
    throw std::invalid_argument("random_density: dimension and rank must be positive");
  const ComplexMatrix a = random_ginibre(dim, rank, rng);
  ComplexMatrix rho(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k < rank; ++k) acc += a(r, k) * std::conj(a(c, k));
      rho(r, c) = acc;
    }
  const double tr = rho.trace().real();
  rho *= Complex{1.0 / tr, 0.0};
  return DensityMatrix(std::move(rho));
}

std::vector<ComplexMatrix> random_kraus(std::size_t dim_in, std::size_t dim_out,
                                        std::size_t n_kraus, Rng& rng) {
  if (dim_in == 0 || dim_out == 0 || n_kraus == 0)
    throw std::invalid_argument("random_kraus: dimensions must be positive");
  if (dim_out * n_kraus < dim_in)
    throw std::invalid_argument("random_kraus: dim_out * n_kraus must be >= dim_in");
  const ComplexMatrix u = random_unitary(dim_out * n_kraus, rng);
  // Isometry column i -> (output o, environment s) with the environment index
  // fastest; K_s picks out one environment level.
  std::vector<ComplexMatrix> kraus(n_kraus, ComplexMatrix(dim_out, dim_in));
  for (std::size_t s = 0; s < n_kraus; ++s)
    for (std::size_t o = 0; o < dim_out; ++o)
      for (std::size_t i = 0; i < dim_in; ++i) kraus[s](o, i) = u(o * n_kraus + s, i);
  return kraus;
}

}  // namespace histlab
