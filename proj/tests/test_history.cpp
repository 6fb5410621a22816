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
#include <complex>
#include <stdexcept>
#include <vector>

#include "histlab/history.hpp"
#include "histlab/kernels.hpp"
#include "histlab/random.hpp"
#include "histlab/states.hpp"

#include "test_support.hpp"

using namespace histlab;
using histlab::testing::kTestSeed;

namespace {

// Independent path-sum oracle: walk every index tuple and multiply the
// transition amplitudes by hand. Exponential, fine for the small cases here.
Ket path_sum_oracle(const InstantChain& chain, const Ket& initial) {
  const std::size_t n = chain.num_instants();
  const std::size_t d = chain.dim();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= d;
  std::vector<Complex> amps(total, Complex{0.0});
  // Composite index: instant N-1 (latest) slowest, instant 0 fastest.
  for (std::size_t x = 0; x < total; ++x) {
    std::vector<std::size_t> idx(n);  // idx[k] = outcome at instant k
    std::size_t rem = x;
    for (std::size_t k = 0; k < n; ++k) {  // fastest digit is instant 0
      idx[k] = rem % d;
      rem /= d;
    }
    Complex a = inner(chain.bases[0].vector(idx[0]), initial);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const Ket from = chain.bases[k].vector(idx[k]);
      const Ket to = chain.bases[k + 1].vector(idx[k + 1]);
      a *= inner(to, Ket(matvec(chain.steps[k].mat, from.amplitudes)));
    }
    amps[x] = a;
  }
  return Ket(amps);
}

}  // namespace

TEST_CASE("trivial two-instant history is the GHZ form") {
  const InstantChain chain = InstantChain::trivial(2, 2);
  const Ket initial(std::vector<Complex>{0.6, Complex{0.0, 0.8}});
  const HistoryState h = build_history(chain, initial);
  REQUIRE(h.dim() == 4);
  CHECK(h.vector.amplitudes[0] == Complex{0.6, 0.0});          // |00>
  CHECK(h.vector.amplitudes[1] == Complex{0.0, 0.0});          // |01>
  CHECK(h.vector.amplitudes[2] == Complex{0.0, 0.0});          // |10>
  CHECK(h.vector.amplitudes[3] == Complex{0.0, 0.8});          // |11>
}

TEST_CASE("X step sends |0> to the |1>|0> history") {
  const InstantChain chain = InstantChain::repeated_step(2, pauli_x());
  const HistoryState h = build_history(chain, Ket::basis_state(2, 0));
  // Latest instant leftmost: outcome 1 at t1, outcome 0 at t0 -> index 2.
  CHECK(std::abs(h.vector.amplitudes[2] - Complex{1.0}) <= 1e-15);
  CHECK(std::abs(h.vector.amplitudes[0]) <= 1e-15);
  CHECK(std::abs(h.vector.amplitudes[1]) <= 1e-15);
  CHECK(std::abs(h.vector.amplitudes[3]) <= 1e-15);
}

TEST_CASE("N-instant trivial history stays GHZ") {
  for (std::size_t n : {3u, 4u, 6u}) {
    const InstantChain chain = InstantChain::trivial(n, 2);
    const Ket initial = Ket(std::vector<Complex>{0.8, -0.6});
    const HistoryState h = build_history(chain, initial);
    std::vector<Complex> want(h.dim(), Complex{0.0});
    want.front() = 0.8;   // all-zeros path
    want.back() = -0.6;   // all-ones path
    CHECK(testing::max_abs_diff(h.vector.amplitudes, want) <= 1e-12);
  }
}

TEST_CASE("transition_amplitude closed forms") {
  const Ket z0 = Ket::basis_state(2, 0);
  const Ket z1 = Ket::basis_state(2, 1);
  CHECK(std::abs(transition_amplitude(UnitaryOp::identity(2), z0, z0) - Complex{1.0}) <= 1e-15);
  CHECK(std::abs(transition_amplitude(UnitaryOp{pauli_x()}, z0, z1) - Complex{1.0}) <= 1e-15);
  CHECK(std::abs(transition_amplitude(UnitaryOp{hadamard()}, z0, z0) -
                 Complex{1.0 / std::sqrt(2.0)}) <= 1e-15);
}

TEST_CASE("bridge_operator in matched and rotated bases") {
  const InstantChain id_chain = InstantChain::trivial(2, 3);
  CHECK(bridge_operator(id_chain, 0).matrix.max_abs_diff(ComplexMatrix::identity(3)) <= 1e-15);

  const InstantChain x_chain = InstantChain::repeated_step(2, pauli_x());
  CHECK(bridge_operator(x_chain, 0).matrix.max_abs_diff(pauli_x()) <= 1e-15);

  // Identity step but the later basis is the Hadamard frame: the bridge is
  // H itself (entries <h_n|i_m> = H_{nm} since H is real symmetric).
  InstantChain rotated = InstantChain::trivial(2, 2);
  rotated.bases[1] = OrthonormalBasis{hadamard()};
  CHECK(bridge_operator(rotated, 0).matrix.max_abs_diff(hadamard()) <= 1e-15);

  CHECK(bridge_operator(x_chain, 0).from_label == x_chain.instants[0]);
  CHECK(bridge_operator(x_chain, 0).to_label == x_chain.instants[1]);
  CHECK_THROWS_AS(bridge_operator(x_chain, 1), std::invalid_argument);
}

TEST_CASE("temporal_marginal of the GHZ history is the dephased state") {
  const Ket initial(std::vector<Complex>{0.6, Complex{0.0, 0.8}});
  const HistoryState h = build_history(InstantChain::trivial(3, 2), initial);
  ComplexMatrix want(2, 2);
  want(0, 0) = 0.36;
  want(1, 1) = 0.64;
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(temporal_marginal(h, t).mat.max_abs_diff(want) <= 1e-12);
  }
  CHECK_THROWS_AS(temporal_marginal(h, 3), std::invalid_argument);
}

TEST_CASE("temporal_marginal tracks the step unitary") {
  const HistoryState h =
      build_history(InstantChain::repeated_step(2, pauli_x()), Ket::basis_state(2, 0));
  CHECK(temporal_marginal(h, 0).mat.max_abs_diff(Ket::basis_state(2, 0).projector()) <=
        1e-12);
  CHECK(temporal_marginal(h, 1).mat.max_abs_diff(Ket::basis_state(2, 1).projector()) <=
        1e-12);
}

TEST_CASE("histories are normalized for random chains") {
  Rng rng(kTestSeed);
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t d = 2 + rep % 3;
    const std::size_t n = 2 + rep % 4;
    std::vector<ComplexMatrix> steps;
    for (std::size_t k = 0; k + 1 < n; ++k) steps.push_back(random_unitary(d, rng));
    InstantChain chain = InstantChain::from_steps(steps, d);
    for (auto& b : chain.bases) b = OrthonormalBasis{random_unitary(d, rng)};
    const HistoryState h = build_history(chain, random_ket(d, rng));
    CHECK(std::abs(h.vector.norm() - 1.0) <= 1e-11);
    CHECK(std::abs(h.to_computational().norm() - 1.0) <= 1e-11);
  }
}

TEST_CASE("amplitudes factor into path products") {
  Rng rng(kTestSeed + 1);
  const std::size_t d = 3;
  std::vector<ComplexMatrix> steps{random_unitary(d, rng), random_unitary(d, rng)};
  InstantChain chain = InstantChain::from_steps(steps, d);
  for (auto& b : chain.bases) b = OrthonormalBasis{random_unitary(d, rng)};
  const Ket initial = random_ket(d, rng);

  const HistoryState h = build_history(chain, initial);
  const Ket oracle = path_sum_oracle(chain, initial);
  CHECK(testing::max_abs_diff(h.vector.amplitudes, oracle.amplitudes) <= 1e-12);
}

TEST_CASE("projecting one instant of a GHZ history collapses the others") {
  // alpha|000> + beta|111>: conditioning on outcome v at any instant leaves
  // the remaining instants in |v...v>, the defining correlation of an
  // entangled history.
  const Ket initial(std::vector<Complex>{0.6, 0.8});
  const HistoryState h = build_history(InstantChain::trivial(3, 2), initial);
  const std::vector<std::size_t> dims{2, 2, 2};

  for (std::size_t v : {0u, 1u}) {
    // Project factor 1 (middle instant) onto |v>.
    std::vector<Complex> psi = h.vector.amplitudes;
    for (std::size_t x = 0; x < psi.size(); ++x) {
      if (((x >> 1) & 1u) != v) psi[x] = 0.0;
    }
    double norm2 = 0.0;
    for (const Complex& a : psi) norm2 += std::norm(a);
    CHECK(norm2 == doctest::Approx(v == 0 ? 0.36 : 0.64).epsilon(1e-12));
    for (Complex& a : psi) a /= std::sqrt(norm2);
    const ComplexMatrix m0 = reduced_density(psi, dims, {2});  // earliest
    const ComplexMatrix m2 = reduced_density(psi, dims, {0});  // latest
    const ComplexMatrix want = Ket::basis_state(2, v).projector();
    CHECK(m0.max_abs_diff(want) <= 1e-12);
    CHECK(m2.max_abs_diff(want) <= 1e-12);
  }
}

TEST_CASE("amplitudes are covariant under a basis change with compensated steps") {
  Rng rng(kTestSeed + 2);
  const std::size_t d = 2;
  const std::size_t n = 3;
  InstantChain chain = InstantChain::trivial(n, d);
  const Ket initial = random_ket(d, rng);
  const HistoryState h = build_history(chain, initial);

  // Rotate the middle instant's basis by V. With identity steps the
  // compensation is U'_{k-1} = V U_{k-1} and U'_k = U_k V^dagger, which keeps
  // every bridge fixed, so the amplitude tensor cannot change.
  const std::size_t k = 1;
  const ComplexMatrix v = random_unitary(d, rng);
  InstantChain rotated = chain;
  rotated.bases[k] = OrthonormalBasis{chain.bases[k].vectors * v};
  rotated.steps[k - 1] = UnitaryOp{v * chain.steps[k - 1].mat};
  rotated.steps[k] = UnitaryOp{chain.steps[k].mat * v.dagger()};
  rotated.validate();

  const HistoryState hr = build_history(rotated, initial);
  CHECK(testing::max_abs_diff(hr.vector.amplitudes, h.vector.amplitudes) <= 1e-12);

  // Ambient coordinates differ by V acting on that instant's factor alone.
  std::vector<Complex> ambient = h.to_computational().amplitudes;
  apply_factor_gate(ambient, chain.factor_dims(), n - 1 - k, v);
  CHECK(testing::max_abs_diff(hr.to_computational().amplitudes, ambient) <= 1e-12);
}

TEST_CASE("history state differs from the naive product model") {
  const Ket plus = Ket::uniform(2);
  const std::size_t n = 3;
  const HistoryState h = build_history(InstantChain::trivial(n, 2), plus);
  const Ket naive = naive_product_model(plus, n);
  REQUIRE(naive.dim() == h.dim());

  // Overlap <naive|hist> = sum_i conj(alpha_i)^n alpha_i; real here, and for
  // n = 3 it equals |a0|^4 + |a1|^4 = 1/2.
  Complex overlap{0.0};
  for (std::size_t i = 0; i < naive.dim(); ++i) {
    overlap += std::conj(naive.amplitudes[i]) * h.vector.amplitudes[i];
  }
  CHECK(std::abs(overlap - Complex{0.5}) <= 1e-12);
  CHECK(std::abs(fidelity(naive, h.vector) - 0.25) <= 1e-12);  // |overlap|^2
  CHECK(fidelity(naive, h.vector) < 1.0);

  // Same closed form for a skewed amplitude pair.
  const Ket skew(std::vector<Complex>{0.6, 0.8});
  const HistoryState hs = build_history(InstantChain::trivial(n, 2), skew);
  const Ket ns = naive_product_model(skew, n);
  Complex ov{0.0};
  for (std::size_t i = 0; i < ns.dim(); ++i) {
    ov += std::conj(ns.amplitudes[i]) * hs.vector.amplitudes[i];
  }
  const double want = std::pow(0.6, 4) + std::pow(0.8, 4);
  CHECK(std::abs(ov - Complex{want}) <= 1e-12);
}

TEST_CASE("naive_product_model examples") {
  const Ket plus = Ket::uniform(2);
  const Ket n2 = naive_product_model(plus, 2);
  CHECK(testing::ket_diff(n2, Ket::uniform(4)) <= 1e-15);
  CHECK_THROWS_AS(naive_product_model(plus, 0), std::invalid_argument);
}

TEST_CASE("composite-dimension guard") {
  // 2^21 exceeds the composite-space cap and must throw before allocating.
  CHECK_THROWS_AS(InstantChain::trivial(21, 2), std::invalid_argument);
  CHECK_THROWS_AS(InstantChain::trivial(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_history(InstantChain::trivial(2, 2), Ket::basis_state(3, 0)),
                  std::invalid_argument);
}
