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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "histlab/eig.hpp"
#include "histlab/json_io.hpp"
#include "histlab/kernels.hpp"
#include "histlab/random.hpp"
#include "histlab/states.hpp"

#include "test_support.hpp"

using namespace histlab;
using histlab::testing::kTestSeed;

namespace {
const Complex kI{0.0, 1.0};
}

TEST_CASE("ComplexMatrix construction and validation") {
  ComplexMatrix m(2, 3);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.max_abs() == 0.0);

  CHECK_THROWS_AS(ComplexMatrix(2, 2, {Complex{1.0}}), std::invalid_argument);
  CHECK(!ComplexMatrix(2, 2, {0.0, 0.0, 0.0, Complex{std::nan(""), 0.0}}).all_finite());
  CHECK(ComplexMatrix::identity(2).all_finite());

  const ComplexMatrix id = ComplexMatrix::identity(3);
  CHECK(id.trace() == Complex{3.0, 0.0});
  CHECK(id.is_hermitian());
  CHECK(id.is_unitary());
}

TEST_CASE("dagger and arithmetic") {
  const ComplexMatrix m(2, 2, {1.0 + 2.0 * kI, 3.0, 0.0, -kI});
  const ComplexMatrix d = m.dagger();
  CHECK(d(0, 0) == Complex{1.0, -2.0});
  CHECK(d(0, 1) == Complex{0.0, 0.0});
  CHECK(d(1, 0) == Complex{3.0, 0.0});
  CHECK(d(1, 1) == kI);

  const ComplexMatrix s = m + m - m;
  CHECK(s.max_abs_diff(m) == 0.0);
  const ComplexMatrix twice = 2.0 * m;
  CHECK(twice(0, 0) == Complex{2.0, 4.0});
}

TEST_CASE("kron identity and block examples") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(kron(i2, i2).max_abs_diff(ComplexMatrix::identity(4)) == 0.0);

  const ComplexMatrix one(1, 1, {Complex{1.0}});
  const ComplexMatrix x = pauli_x();
  CHECK(kron(one, x).max_abs_diff(x) == 0.0);

  // |0><0| (x) X: X in the upper-left 2x2 block, zeros elsewhere.
  const ComplexMatrix p0 = Ket::basis_state(2, 0).projector();
  const ComplexMatrix g = kron(p0, x);
  ComplexMatrix want(4, 4);
  want(0, 1) = 1.0;
  want(1, 0) = 1.0;
  CHECK(g.max_abs_diff(want) == 0.0);
}

TEST_CASE("kron associativity is exact for integer entries") {
  Rng rng(kTestSeed);
  ComplexMatrix a(2, 2), b(3, 2), c(2, 3);
  for (auto& e : a.entries()) e = std::floor(rng.uniform() * 5.0) - 2.0;
  for (auto& e : b.entries()) e = std::floor(rng.uniform() * 5.0) - 2.0;
  for (auto& e : c.entries()) e = std::floor(rng.uniform() * 5.0) - 2.0;
  CHECK(kron(kron(a, b), c).max_abs_diff(kron(a, kron(b, c))) == 0.0);
}

TEST_CASE("partial_trace examples") {
  // Trace out factor 1 of |00><00| keeps |0><0|.
  const Ket zz = tensor(Ket::basis_state(2, 0), Ket::basis_state(2, 0));
  const ComplexMatrix kept = partial_trace(zz.projector(), {2, 2}, {0});
  CHECK(kept.max_abs_diff(Ket::basis_state(2, 0).projector()) == 0.0);

  // Bell state: either marginal is I/2.
  Ket bell(std::vector<Complex>{1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)});
  const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
  CHECK(partial_trace(bell.projector(), {2, 2}, {1}).max_abs_diff(half) <= 1e-15);
  CHECK(partial_trace(bell.projector(), {2, 2}, {0}).max_abs_diff(half) <= 1e-15);

  // Keeping all factors returns the input unchanged.
  CHECK(partial_trace(bell.projector(), {2, 2}, {0, 1}).max_abs_diff(bell.projector()) == 0.0);

  CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(3), {2, 2}, {0}), std::invalid_argument);
}

TEST_CASE("partial_trace composes and preserves trace") {
  Rng rng(kTestSeed + 1);
  for (int rep = 0; rep < 10; ++rep) {
    const Ket psi = random_ket(8, rng);
    const ComplexMatrix rho = psi.projector();
    // Tracing out factor 0 then factor 1 equals tracing out {0,1} directly.
    const ComplexMatrix step1 = partial_trace(rho, {2, 2, 2}, {1, 2});
    const ComplexMatrix step2 = partial_trace(step1, {2, 2}, {1});
    const ComplexMatrix direct = partial_trace(rho, {2, 2, 2}, {2});
    CHECK(step2.max_abs_diff(direct) <= 1e-12);
    CHECK(std::abs(direct.trace() - rho.trace()) <= 1e-10);
  }
}

TEST_CASE("eigvals_hermitian on frozen 2x2 oracles") {
  const auto z_eigs = eigvals_hermitian(pauli_z());
  REQUIRE(z_eigs.size() == 2);
  CHECK(z_eigs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z_eigs[1] == doctest::Approx(-1.0).epsilon(1e-12));

  const auto half_eigs = eigvals_hermitian(0.5 * ComplexMatrix::identity(2));
  CHECK(half_eigs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(half_eigs[1] == doctest::Approx(0.5).epsilon(1e-12));

  // rho0 - rho1 for rho0 = |0><0|, rho1 = |+><+| has eigenvalues +-1/sqrt(2).
  Ket plus(std::vector<Complex>{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  const ComplexMatrix diff = Ket::basis_state(2, 0).projector() - plus.projector();
  const auto eigs = eigvals_hermitian(diff);
  CHECK(std::abs(eigs[0] - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(eigs[1] + 1.0 / std::sqrt(2.0)) <= 1e-12);

  CHECK_THROWS_AS(eigvals_hermitian(pauli_x() * kI), std::invalid_argument);
}

TEST_CASE("eigh reconstruction on random Hermitian matrices") {
  Rng rng(kTestSeed + 2);
  for (std::size_t dim : {2u, 3u, 5u, 8u}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const EighResult r = eigh_hermitian(h);
    REQUIRE(r.eigenvalues.size() == dim);
    // Descending order.
    for (std::size_t i = 1; i < dim; ++i) CHECK(r.eigenvalues[i - 1] >= r.eigenvalues[i]);
    // Eigenvector matrix is unitary and reconstructs h.
    CHECK(r.eigenvectors.is_unitary(1e-10));
    ComplexMatrix d(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) d(i, i) = r.eigenvalues[i];
    const ComplexMatrix back = r.eigenvectors * d * r.eigenvectors.dagger();
    CHECK(back.max_abs_diff(h) <= 1e-10);
    // Eigenvalue sum equals the trace.
    double sum = 0.0;
    for (double v : r.eigenvalues) sum += v;
    CHECK(std::abs(sum - h.trace().real()) <= 1e-8);
  }
}

TEST_CASE("trace_norm oracles") {
  CHECK(trace_norm(pauli_x()) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(trace_norm(ComplexMatrix(3, 3)) == 0.0);

  Ket plus(std::vector<Complex>{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  const ComplexMatrix diff = Ket::basis_state(2, 0).projector() - plus.projector();
  CHECK(std::abs(trace_norm(diff) - std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("is_psd and hermitian_function") {
  CHECK(is_psd(Ket::basis_state(2, 0).projector()));
  CHECK(!is_psd(pauli_z()));

  // exp(-i Z theta / 2) through the spectral function equals rotation_z.
  const double theta = 0.7;
  const ComplexMatrix u = hermitian_function(
      pauli_z(), [theta](double x) { return std::exp(Complex{0.0, -x * theta / 2.0}); });
  CHECK(u.max_abs_diff(rotation_z(theta)) <= 1e-12);

  // Inverse square root with a null-space cutoff: pinv-sqrt of a projector.
  const ComplexMatrix p = Ket::basis_state(2, 0).projector();
  const ComplexMatrix s = hermitian_function(
      p, [](double x) { return x > 1e-12 ? Complex{1.0 / std::sqrt(x), 0.0} : Complex{0.0}; });
  CHECK(s.max_abs_diff(p) <= 1e-12);
}

TEST_CASE("Ket basics") {
  const Ket z0 = Ket::basis_state(2, 0);
  CHECK(z0.norm() == 1.0);
  z0.validate();
  CHECK_THROWS_AS(Ket::basis_state(2, 5), std::invalid_argument);

  Ket unnorm(std::vector<Complex>{3.0, 4.0});
  CHECK_THROWS_AS(unnorm.validate(), std::invalid_argument);
  const Ket n = unnorm.normalized();
  CHECK(std::abs(n.amplitudes[0].real() - 0.6) <= 1e-15);
  CHECK_THROWS_AS(Ket(std::vector<Complex>{0.0, 0.0}).normalized(), std::invalid_argument);

  const Ket u = Ket::uniform(4);
  CHECK(std::abs(u.norm() - 1.0) <= 1e-12);
  CHECK(std::abs(u.amplitudes[3].real() - 0.5) <= 1e-15);

  CHECK(std::abs(inner(z0, Ket::basis_state(2, 1))) == 0.0);
  CHECK(fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-12));

  const Ket prod = tensor(z0, Ket::basis_state(3, 2));
  CHECK(prod.dim() == 6);
  CHECK(prod.amplitudes[2] == Complex{1.0});
}

TEST_CASE("DensityMatrix validation") {
  DensityMatrix::from_ket(Ket::basis_state(2, 0)).validate();
  DensityMatrix::maximally_mixed(3).validate();

  // Wrong trace.
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(2)).validate(), std::invalid_argument);
  // Not Hermitian.
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(2, 2, {0.5, 1.0, 0.0, 0.5})).validate(),
                  std::invalid_argument);
  // Hermitian, unit trace, but indefinite.
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix(2, 2, {1.5, 0.0, 0.0, -0.5})).validate(),
                  std::invalid_argument);

  CHECK(DensityMatrix::from_ket(Ket::uniform(2)).purity() == doctest::Approx(1.0));
  CHECK(DensityMatrix::maximally_mixed(2).purity() == doctest::Approx(0.5));
}

TEST_CASE("UnitaryOp and OrthonormalBasis validation") {
  UnitaryOp::identity(3).validate();
  CHECK_THROWS_AS(UnitaryOp(ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 1.0})).validate(),
                  std::invalid_argument);

  const OrthonormalBasis comp = OrthonormalBasis::computational(3);
  comp.validate();
  CHECK(testing::ket_diff(comp.vector(1), Ket::basis_state(3, 1)) == 0.0);
  CHECK_THROWS_AS(OrthonormalBasis(ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 0.0})).validate(),
                  std::invalid_argument);
}

TEST_CASE("builtin gates") {
  CHECK(pauli_x().is_unitary());
  CHECK(pauli_y().is_unitary());
  CHECK(pauli_z().is_unitary());
  CHECK(hadamard().is_unitary());
  CHECK((pauli_x() * pauli_y() * pauli_z()).max_abs_diff(kI * ComplexMatrix::identity(2)) <=
        1e-15);

  const double theta = 2.0 * std::numbers::pi / 3.0;
  const ComplexMatrix ry = rotation_y(theta);
  CHECK(ry.is_unitary());
  CHECK(std::abs(ry(0, 0).real() - std::cos(theta / 2.0)) <= 1e-15);
  CHECK(std::abs(ry(0, 1).real() + std::sin(theta / 2.0)) <= 1e-15);

  CHECK(builtin_matrix("H").max_abs_diff(hadamard()) == 0.0);
  CHECK_THROWS_AS(builtin_matrix("Q"), std::invalid_argument);

  CHECK(real_expectation(Ket::basis_state(2, 0).projector(), pauli_z()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(real_expectation(pauli_x(), ComplexMatrix(2, 2, {0.0, kI, kI, 0.0})),
                  std::runtime_error);
}

TEST_CASE("random generators are seeded and well conditioned") {
  Rng a(kTestSeed + 3);
  Rng b(kTestSeed + 3);
  const ComplexMatrix ua = random_unitary(4, a);
  const ComplexMatrix ub = random_unitary(4, b);
  CHECK(ua.max_abs_diff(ub) == 0.0);  // same seed, same matrix

  Rng rng(kTestSeed + 4);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix u = random_unitary(2 + rep % 4, rng);
    const ComplexMatrix gram = u.dagger() * u;
    CHECK(gram.max_abs_diff(ComplexMatrix::identity(u.rows())) < 1e-10);
  }

  random_density(3, 2, rng).validate();
  CHECK(std::abs(random_ket(5, rng).norm() - 1.0) <= 1e-12);

  // Stinespring Kraus sets are trace preserving.
  const auto kraus = random_kraus(3, 3, 4, rng);
  ComplexMatrix sum(3, 3);
  for (const auto& k : kraus) sum += k.dagger() * k;
  CHECK(sum.max_abs_diff(ComplexMatrix::identity(3)) <= 1e-10);

  const ComplexMatrix h = random_hermitian(4, rng);
  CHECK(h.is_hermitian(0.0));  // exactly Hermitian by construction
}

TEST_CASE("json round trips are exact and deterministic") {
  Rng rng(kTestSeed + 5);
  const ComplexMatrix m = random_ginibre(3, 2, rng);
  const ComplexMatrix back = matrix_from_json(matrix_to_json(m), "test");
  CHECK(back.max_abs_diff(m) == 0.0);

  const Ket k = random_ket(4, rng);
  const Ket kback = ket_from_json(ket_to_json(k), "test");
  CHECK(testing::ket_diff(kback, k) == 0.0);

  CHECK(dump_json(matrix_to_json(m)) == dump_json(matrix_to_json(back)));

  // Errors carry the caller's context string.
  try {
    matrix_from_json(nlohmann::json{{"rows", 2}}, "somewhere.steps[1]");
    CHECK(false);
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("somewhere.steps[1]") != std::string::npos);
  }

  try {
    read_json_file("/nonexistent/never.json");
    CHECK(false);
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("/nonexistent/never.json") != std::string::npos);
  }
}
