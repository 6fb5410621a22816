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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "histlab/kernels.hpp"
#include "histlab/random.hpp"
#include "histlab/states.hpp"

#include "test_support.hpp"

using namespace histlab;
using histlab::testing::kTestSeed;

// The parallel kernels must agree with the serial reference bit for bit:
// every comparison in this file demands exact equality, not a tolerance.

TEST_CASE("kron, matmul, matvec match serial exactly") {
  Rng rng(kTestSeed);
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix a = random_ginibre(6, 4, rng);
    const ComplexMatrix b = random_ginibre(3, 5, rng);
    CHECK(kron(a, b).max_abs_diff(serial::kron(a, b)) == 0.0);

    const ComplexMatrix c = random_ginibre(4, 7, rng);
    CHECK(matmul(a, c).max_abs_diff(serial::matmul(a, c)) == 0.0);

    const Ket v = random_ket(4, rng);
    CHECK(testing::max_abs_diff(matvec(a, v.amplitudes),
                                serial::matvec(a, v.amplitudes)) == 0.0);
  }
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(matvec(ComplexMatrix(2, 3), std::vector<Complex>(2)), std::invalid_argument);
}

TEST_CASE("partial_trace and reduced_density match serial exactly") {
  Rng rng(kTestSeed + 1);
  const std::vector<std::size_t> dims{2, 3, 2};
  const ComplexMatrix rho = random_density(12, 3, rng).mat;
  for (const std::vector<std::size_t>& keep :
       {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {0, 1, 2}}) {
    CHECK(partial_trace(rho, dims, keep).max_abs_diff(serial::partial_trace(rho, dims, keep)) ==
          0.0);
  }

  const Ket psi = random_ket(12, rng);
  for (const std::vector<std::size_t>& keep :
       {std::vector<std::size_t>{0}, {1}, {2}, {1, 2}}) {
    CHECK(reduced_density(psi.amplitudes, dims, keep)
              .max_abs_diff(serial::reduced_density(psi.amplitudes, dims, keep)) == 0.0);
  }
}

TEST_CASE("apply_factor_gate matches serial and the full-kron oracle") {
  Rng rng(kTestSeed + 2);
  const std::vector<std::size_t> dims{2, 3, 2};
  const Ket psi0 = random_ket(12, rng);

  for (std::size_t pos = 0; pos < dims.size(); ++pos) {
    const ComplexMatrix gate = random_unitary(dims[pos], rng);

    std::vector<Complex> par = psi0.amplitudes;
    apply_factor_gate(par, dims, pos, gate);
    std::vector<Complex> ser = psi0.amplitudes;
    serial::apply_factor_gate(ser, dims, pos, gate);
    CHECK(testing::max_abs_diff(par, ser) == 0.0);

    // Oracle: embed the gate by krons with identities, then one matvec.
    ComplexMatrix full = ComplexMatrix::identity(1);
    for (std::size_t k = 0; k < dims.size(); ++k) {
      full = serial::kron(full, k == pos ? gate : ComplexMatrix::identity(dims[k]));
    }
    const std::vector<Complex> want = serial::matvec(full, psi0.amplitudes);
    CHECK(testing::max_abs_diff(par, want) <= 1e-13);
  }

  std::vector<Complex> bad = psi0.amplitudes;
  CHECK_THROWS_AS(apply_factor_gate(bad, dims, 3, ComplexMatrix::identity(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_factor_gate(bad, dims, 1, ComplexMatrix::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("apply_pair_gate matches serial and the full-kron oracle") {
  Rng rng(kTestSeed + 3);
  const std::vector<std::size_t> dims{2, 2, 3};
  const Ket psi0 = random_ket(12, rng);

  struct Pair {
    std::size_t a, b;
  };
  for (Pair p : {Pair{0, 1}, Pair{1, 2}, Pair{0, 2}}) {
    const ComplexMatrix gate = random_unitary(dims[p.a] * dims[p.b], rng);

    std::vector<Complex> par = psi0.amplitudes;
    apply_pair_gate(par, dims, p.a, p.b, gate);
    std::vector<Complex> ser = psi0.amplitudes;
    serial::apply_pair_gate(ser, dims, p.a, p.b, gate);
    CHECK(testing::max_abs_diff(par, ser) == 0.0);

    // Oracle: permute the pair to the front, apply gate (x) identity, undo.
    std::vector<std::size_t> perm{p.a, p.b};
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (k != p.a && k != p.b) perm.push_back(k);
    }
    std::vector<std::size_t> pdims;
    std::vector<Complex> moved = permute_factors(psi0.amplitudes, dims, perm, &pdims);
    std::size_t rest = 1;
    for (std::size_t k = 2; k < pdims.size(); ++k) rest *= pdims[k];
    const ComplexMatrix full = serial::kron(gate, ComplexMatrix::identity(rest));
    moved = serial::matvec(full, moved);
    // Invert the permutation.
    std::vector<std::size_t> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
    const std::vector<Complex> want = permute_factors(moved, pdims, inv);
    CHECK(testing::max_abs_diff(par, want) <= 1e-13);
  }

  std::vector<Complex> bad = psi0.amplitudes;
  CHECK_THROWS_AS(apply_pair_gate(bad, dims, 1, 1, ComplexMatrix::identity(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_pair_gate(bad, dims, 0, 1, ComplexMatrix::identity(6)),
                  std::invalid_argument);
}

TEST_CASE("permute_factors round trips and relabels dims") {
  Rng rng(kTestSeed + 4);
  const std::vector<std::size_t> dims{2, 3, 4};
  const Ket psi = random_ket(24, rng);

  const std::vector<std::size_t> perm{2, 0, 1};
  std::vector<std::size_t> pdims;
  const std::vector<Complex> moved = permute_factors(psi.amplitudes, dims, perm, &pdims);
  CHECK(pdims == std::vector<std::size_t>{4, 2, 3});

  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
  const std::vector<Complex> back = permute_factors(moved, pdims, inv);
  CHECK(testing::max_abs_diff(back, psi.amplitudes) == 0.0);

  // A basis vector moves to the permuted composite index.
  std::vector<Complex> e(24, Complex{0.0});
  // (i0,i1,i2) = (1,2,3) -> composite (1*3+2)*4+3 = 23.
  e[23] = 1.0;
  const std::vector<Complex> pe = permute_factors(e, dims, perm);
  // New order (i2,i0,i1) = (3,1,2) -> (3*2+1)*3+2 = 23. Same here; use an
  // asymmetric entry too.
  CHECK(pe[23] == Complex{1.0});
  std::vector<Complex> e2(24, Complex{0.0});
  // (i0,i1,i2) = (0,1,2) -> (0*3+1)*4+2 = 6.
  e2[6] = 1.0;
  const std::vector<Complex> pe2 = permute_factors(e2, dims, perm);
  // (i2,i0,i1) = (2,0,1) -> (2*2+0)*3+1 = 13.
  CHECK(pe2[13] == Complex{1.0});

  CHECK_THROWS_AS(permute_factors(psi.amplitudes, dims, {0, 0, 1}), std::invalid_argument);
}

TEST_CASE("vec_kron matches tensor of kets") {
  Rng rng(kTestSeed + 5);
  const Ket a = random_ket(3, rng);
  const Ket b = random_ket(4, rng);
  const std::vector<Complex> v = vec_kron(a.amplitudes, b.amplitudes);
  const Ket t = tensor(a, b);
  CHECK(testing::max_abs_diff(v, t.amplitudes) == 0.0);
}

TEST_CASE("reduced_density agrees with partial_trace of the projector") {
  Rng rng(kTestSeed + 6);
  const std::vector<std::size_t> dims{2, 2, 3};
  const Ket psi = random_ket(12, rng);
  const ComplexMatrix rho = psi.projector();
  for (const std::vector<std::size_t>& keep : {std::vector<std::size_t>{0}, {2}, {0, 1}}) {
    CHECK(reduced_density(psi.amplitudes, dims, keep)
              .max_abs_diff(partial_trace(rho, dims, keep)) <= 1e-13);
  }
  CHECK_THROWS_AS(reduced_density(psi.amplitudes, dims, {}), std::invalid_argument);
  CHECK_THROWS_AS(reduced_density(psi.amplitudes, dims, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(reduced_density(psi.amplitudes, {2, 2}, {0}), std::invalid_argument);
}
