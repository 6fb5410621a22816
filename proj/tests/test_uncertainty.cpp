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
#include <stdexcept>
#include <vector>

#include "histlab/history.hpp"
#include "histlab/random.hpp"
#include "histlab/states.hpp"
#include "histlab/uncertainty.hpp"

#include "test_support.hpp"

using namespace histlab;
using histlab::testing::kTestSeed;

namespace {

InstantEnsemble two_states(const Ket& a, const Ket& b) {
  return InstantEnsemble::uniform({DensityMatrix::from_ket(a), DensityMatrix::from_ket(b)});
}

}  // namespace

TEST_CASE("instant_marginals collects temporal marginals with uniform priors") {
  const Ket initial(std::vector<Complex>{0.6, 0.8});
  const HistoryState h = build_history(InstantChain::repeated_step(3, pauli_x()), initial);
  const InstantEnsemble e = instant_marginals(h);
  REQUIRE(e.size() == 3);
  e.validate();
  for (double p : e.priors) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(e.states[t].mat.max_abs_diff(temporal_marginal(h, t).mat) <= 1e-12);
  }
}

TEST_CASE("InstantEnsemble validation") {
  CHECK_THROWS_AS(InstantEnsemble::uniform({}), std::invalid_argument);
  InstantEnsemble bad = two_states(Ket::basis_state(2, 0), Ket::basis_state(2, 1));
  bad.priors = {0.9, 0.2};  // does not sum to 1
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.priors = {0.5};  // wrong length
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  const InstantEnsemble skew{{DensityMatrix::from_ket(Ket::basis_state(2, 0)),
                              DensityMatrix::from_ket(Ket::basis_state(2, 1))},
                             {0.9, 0.1}};
  CHECK(skew.max_prior() == doctest::Approx(0.9));
}

TEST_CASE("helstrom_success closed forms") {
  // Orthogonal pure states: perfectly distinguishable.
  CHECK(helstrom_success(two_states(Ket::basis_state(2, 0), Ket::basis_state(2, 1))) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Identical states: coin flip.
  CHECK(helstrom_success(two_states(Ket::uniform(2), Ket::uniform(2))) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // {|0>, |+>} uniform: 1/2 + sqrt(2)/4.
  CHECK(helstrom_success(two_states(Ket::basis_state(2, 0), Ket::uniform(2))) ==
        doctest::Approx(0.5 + std::sqrt(2.0) / 4.0).epsilon(1e-12));

  // Skewed priors on identical states: guess the likelier one.
  InstantEnsemble skew = two_states(Ket::uniform(2), Ket::uniform(2));
  skew.priors = {0.8, 0.2};
  CHECK(helstrom_success(skew) == doctest::Approx(0.8).epsilon(1e-12));

  // Only defined for exactly two states.
  const InstantEnsemble three = InstantEnsemble::uniform(
      {DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2),
       DensityMatrix::maximally_mixed(2)});
  CHECK_THROWS_AS(helstrom_success(three), std::invalid_argument);
}

TEST_CASE("discrimination_success baselines and floors") {
  // Identical states, uniform priors over N: every strategy collapses to 1/N.
  for (std::size_t n : {2u, 3u, 4u}) {
    const InstantEnsemble e = InstantEnsemble::uniform(
        std::vector<DensityMatrix>(n, DensityMatrix::from_ket(Ket::uniform(2))));
    CHECK(discrimination_success(e, DiscriminationStrategy::kPrettyGood) ==
          doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-10));
    CHECK(discrimination_success(e, DiscriminationStrategy::kRandomGuess) ==
          doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-12));
  }

  // Identical states with a dominant prior: floored at max_prior.
  InstantEnsemble skew = two_states(Ket::uniform(2), Ket::uniform(2));
  skew.priors = {0.9, 0.1};
  CHECK(discrimination_success(skew, DiscriminationStrategy::kPrettyGood) ==
        doctest::Approx(0.9).epsilon(1e-10));

  // Orthogonal states: 1 for any measurement-based strategy.
  const InstantEnsemble orth = two_states(Ket::basis_state(2, 0), Ket::basis_state(2, 1));
  CHECK(discrimination_success(orth, DiscriminationStrategy::kPrettyGood) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(discrimination_success(orth, DiscriminationStrategy::kBruteForceProjective) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("brute force tracks helstrom on random qubit pairs") {
  Rng rng(kTestSeed);
  for (int rep = 0; rep < 4; ++rep) {
    const InstantEnsemble e = two_states(random_ket(2, rng), random_ket(2, rng));
    const double opt = helstrom_success(e);
    const double bf =
        discrimination_success(e, DiscriminationStrategy::kBruteForceProjective, 1e-3);
    CHECK(bf <= opt + 1e-9);        // never beats the optimum
    CHECK(std::abs(bf - opt) <= 1e-4);  // grid fine enough to reach it
  }
}

TEST_CASE("pretty good measurement never beats helstrom on two states") {
  Rng rng(kTestSeed + 1);
  for (int rep = 0; rep < 6; ++rep) {
    const InstantEnsemble e =
        InstantEnsemble::uniform({random_density(2, 2, rng), random_density(2, 2, rng)});
    const double pg = discrimination_success(e, DiscriminationStrategy::kPrettyGood);
    CHECK(pg <= helstrom_success(e) + 1e-9);
  }
}

TEST_CASE("brute force rejects unsupported ensembles") {
  const InstantEnsemble qutrit = InstantEnsemble::uniform(
      {DensityMatrix::maximally_mixed(3), DensityMatrix::maximally_mixed(3)});
  CHECK_THROWS_AS(
      discrimination_success(qutrit, DiscriminationStrategy::kBruteForceProjective),
      std::invalid_argument);
  const InstantEnsemble five = InstantEnsemble::uniform(
      std::vector<DensityMatrix>(5, DensityMatrix::maximally_mixed(2)));
  CHECK_THROWS_AS(
      discrimination_success(five, DiscriminationStrategy::kBruteForceProjective),
      std::invalid_argument);
}

TEST_CASE("pretty_good_is_lower_bound cases") {
  // Two states: pretty good is reported against helstrom, not a lower bound.
  CHECK(!pretty_good_is_lower_bound(two_states(Ket::basis_state(2, 0), Ket::uniform(2))));
  // Three identical states: known exact (1/N), not a lower bound.
  CHECK(!pretty_good_is_lower_bound(InstantEnsemble::uniform(
      std::vector<DensityMatrix>(3, DensityMatrix::from_ket(Ket::uniform(2))))));
  // Three pairwise-orthogonal states: exact (1), not a lower bound.
  CHECK(!pretty_good_is_lower_bound(
      InstantEnsemble::uniform({DensityMatrix::from_ket(Ket::basis_state(3, 0)),
                                DensityMatrix::from_ket(Ket::basis_state(3, 1)),
                                DensityMatrix::from_ket(Ket::basis_state(3, 2))})));
  // Three distinct non-orthogonal states: genuinely a lower bound.
  Rng rng(kTestSeed + 2);
  CHECK(pretty_good_is_lower_bound(
      InstantEnsemble::uniform({DensityMatrix::from_ket(Ket::basis_state(2, 0)),
                                DensityMatrix::from_ket(Ket::uniform(2)),
                                DensityMatrix::from_ket(random_ket(2, rng))})));
}

TEST_CASE("EnergyModel spectrum handling") {
  const EnergyModel em = EnergyModel::from_hamiltonian(pauli_z());
  REQUIRE(em.eigenvalues.size() == 2);
  CHECK(em.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(em.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));

  // Degenerate spectrum rejected unless explicitly allowed.
  CHECK_THROWS_AS(EnergyModel::from_hamiltonian(ComplexMatrix::identity(2)),
                  std::invalid_argument);
  const EnergyModel deg = EnergyModel::from_hamiltonian(ComplexMatrix::identity(2), true);
  CHECK(deg.allow_degenerate);

  CHECK_THROWS_AS(EnergyModel::from_hamiltonian(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("EnergyModel evolution matches the rotation closed form") {
  // H = sigma_z / 2 generates exp(-i Z tau / 2) = rotation_z(tau).
  const EnergyModel em = EnergyModel::from_hamiltonian(0.5 * pauli_z());
  for (double tau : {0.3, 1.0, 2.5}) {
    CHECK(em.evolution(tau).max_abs_diff(rotation_z(tau)) <= 1e-12);
  }
  CHECK(em.evolution(0.0).max_abs_diff(ComplexMatrix::identity(2)) <= 1e-12);
}

TEST_CASE("energy_statistics closed forms") {
  const EnergyModel em = EnergyModel::from_hamiltonian(pauli_x());

  // Eigenstate: zero spread, zero entropy.
  const Ket plus = Ket::uniform(2);
  const EnergyStatistics es = energy_statistics(DensityMatrix::from_ket(plus), em);
  CHECK(es.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(es.variance) <= 1e-12);
  CHECK(std::abs(es.shannon_entropy_bits) <= 1e-12);

  // |0> against sigma_x: mean 0, variance 1, entropy 1 bit.
  const EnergyStatistics zs =
      energy_statistics(DensityMatrix::from_ket(Ket::basis_state(2, 0)), em);
  CHECK(std::abs(zs.mean) <= 1e-12);
  CHECK(zs.variance == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zs.shannon_entropy_bits == doctest::Approx(1.0).epsilon(1e-12));

  // Maximally mixed: same moments as |0> for this Hamiltonian.
  const EnergyStatistics ms = energy_statistics(DensityMatrix::maximally_mixed(2), em);
  CHECK(std::abs(ms.mean) <= 1e-12);
  CHECK(ms.variance == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(energy_statistics(DensityMatrix::maximally_mixed(3), em),
                  std::invalid_argument);
}

TEST_CASE("uncertainty_report: eigenstate extreme") {
  // Eigenbasis instants + Hamiltonian-generated steps: the marginals of an
  // eigenstate are all identical, so the success collapses to blind guessing.
  const EnergyModel em = EnergyModel::from_hamiltonian(pauli_z());
  for (std::size_t n : {2u, 3u}) {
    InstantChain chain = InstantChain::repeated_step(n, em.evolution(0.7));
    for (auto& b : chain.bases) b = em.eigenbasis;
    const UncertaintyReport r = uncertainty_report(chain, Ket::basis_state(2, 0), em);
    CHECK(std::abs(r.energy.variance) <= 1e-10);
    CHECK(std::abs(r.energy.shannon_entropy_bits) <= 1e-10);
    CHECK(r.time_success ==
          doctest::Approx(1.0 / static_cast<double>(n)).epsilon(1e-9));
    CHECK(r.time_method == (n == 2 ? "helstrom" : "pretty_good"));
    CHECK(r.n_instants == n);
    CHECK(!r.external_energy_model);
  }
}

TEST_CASE("uncertainty_report: maximal-spread extreme") {
  // X gate on |0>: full 1-bit energy spread and perfectly distinguishable
  // instants.
  const EnergyModel em = EnergyModel::from_hamiltonian(pauli_x());
  const InstantChain chain = InstantChain::repeated_step(2, pauli_x());
  const UncertaintyReport r = uncertainty_report(chain, Ket::basis_state(2, 0), em);
  CHECK(r.energy.shannon_entropy_bits == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.energy.variance == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.time_success == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.time_method == "helstrom");
  // X commutes with H = sigma_x, so the evolution is internal to the model.
  CHECK(!r.external_energy_model);
}

TEST_CASE("uncertainty_report: stationary state under a trivial chain") {
  // No evolution at all: any eigenstate of any Hamiltonian sits still.
  const EnergyModel em = EnergyModel::from_hamiltonian(pauli_x());
  const UncertaintyReport r =
      uncertainty_report(InstantChain::trivial(3, 2), Ket::uniform(2), em);
  CHECK(std::abs(r.energy.variance) <= 1e-12);
  CHECK(r.time_success == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(!r.external_energy_model);
}

TEST_CASE("uncertainty_report flags steps foreign to the energy model") {
  // X step with H = sigma_z: [X, Z] != 0, so the chain cannot come from
  // this Hamiltonian.
  const EnergyModel em = EnergyModel::from_hamiltonian(pauli_z());
  const InstantChain chain = InstantChain::repeated_step(2, pauli_x());
  const UncertaintyReport r = uncertainty_report(chain, Ket::basis_state(2, 0), em);
  CHECK(r.external_energy_model);

  // Dimension mismatch throws.
  CHECK_THROWS_AS(
      uncertainty_report(InstantChain::trivial(2, 3), Ket::basis_state(3, 0), em),
      std::invalid_argument);
}
