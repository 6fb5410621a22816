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

#ifndef HISTLAB_UNCERTAINTY_HPP
#define HISTLAB_UNCERTAINTY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "histlab/history.hpp"

namespace histlab {

// The "which instant is this?" guessing game: states are per-instant
// marginals of a history, priors default to uniform.
struct InstantEnsemble {
  std::vector<DensityMatrix> states;
  std::vector<double> priors;

  static InstantEnsemble uniform(std::vector<DensityMatrix> states);
  std::size_t size() const { return states.size(); }
  double max_prior() const;
  void validate(double tol = kDefaultTol) const;
};

struct EnergyModel {
  ComplexMatrix hamiltonian;
  OrthonormalBasis eigenbasis;     // columns ordered by descending eigenvalue
  std::vector<double> eigenvalues; // descending
  bool allow_degenerate = false;

  // Degenerate spectra (adjacent gap below gap_tol) are rejected unless
  // allow_degenerate is set.
  static EnergyModel from_hamiltonian(const ComplexMatrix& h, bool allow_degenerate = false,
                                      double gap_tol = 1e-9);
  std::size_t dim() const { return hamiltonian.rows(); }
  // exp(-i H tau).
  ComplexMatrix evolution(double tau) const;
};

InstantEnsemble instant_marginals(const HistoryState& h);

// Optimal two-state minimum-error success: (1 + ||p0 rho0 - p1 rho1||_1) / 2.
double helstrom_success(const InstantEnsemble& e);

enum class DiscriminationStrategy {
  kPrettyGood,            // square-root measurement
  kBruteForceProjective,  // qubit-only grid over projective measurements
  kRandomGuess,           // always guess the largest prior
};

// Success probability of the chosen strategy, floored at the blind-guess
// baseline max_prior() (a measurement can always be ignored, so no strategy
// reports worse than guessing).  Brute force accepts only qubit ensembles
// with at most 4 states; resolution is the angular grid step in radians.
double discrimination_success(const InstantEnsemble& e, DiscriminationStrategy strategy,
                              double resolution = 1e-3);

// True when the pretty-good value is only a lower bound on the optimum:
// more than two states that are neither all identical nor pairwise
// orthogonal.
bool pretty_good_is_lower_bound(const InstantEnsemble& e, double tol = 1e-9);

struct EnergyStatistics {
  double mean = 0.0;
  double variance = 0.0;
  double shannon_entropy_bits = 0.0;  // of the eigenbasis outcome distribution
};

EnergyStatistics energy_statistics(const DensityMatrix& state, const EnergyModel& em);

struct UncertaintyReport {
  EnergyStatistics energy;
  double time_success = 0.0;  // discrimination success over the instant ensemble
  std::string time_method;    // "helstrom" (2 instants) or "pretty_good"
  bool time_lower_bound = false;
  std::size_t n_instants = 0;
  // Set when some chain step does not commute with the Hamiltonian, i.e. the
  // chain was not generated by this energy model.
  bool external_energy_model = false;
};

// Pairs the energy spread of the initial state with the distinguishability
// of the per-instant marginals for the same evolution.
UncertaintyReport uncertainty_report(const InstantChain& chain, const Ket& initial,
                                     const EnergyModel& em);

}  // namespace histlab

#endif  // HISTLAB_UNCERTAINTY_HPP
