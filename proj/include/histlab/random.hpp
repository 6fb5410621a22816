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

#ifndef HISTLAB_RANDOM_HPP
#define HISTLAB_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "histlab/states.hpp"

namespace histlab {

// Seeded RNG so every sampled object is reproducible from a scenario seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return uniform_(engine_); }
  double normal() { return normal_(engine_); }
  Complex complex_normal() { return Complex{normal(), normal()}; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Matrix of independent standard complex Gaussians.
ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-distributed unitary: Gram-Schmidt QR of a Ginibre sample with the R
// diagonal forced positive.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

Ket random_ket(std::size_t dim, Rng& rng);

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

// rank columns of Gaussians, normalized: rho = A A^dagger / tr(A A^dagger).
DensityMatrix random_density(std::size_t dim, std::size_t rank, Rng& rng);

// Random CPTP map via a Stinespring dilation: the first dim_in columns of a
// Haar unitary on (dim_out x n_kraus) define an isometry, sliced into Kraus
// operators.  Requires dim_out * n_kraus >= dim_in.
std::vector<ComplexMatrix> random_kraus(std::size_t dim_in, std::size_t dim_out,
                                        std::size_t n_kraus, Rng& rng);

}  // namespace histlab

#endif  // HISTLAB_RANDOM_HPP
