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

#ifndef HISTLAB_MONITOR_HPP
#define HISTLAB_MONITOR_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "histlab/history.hpp"

namespace histlab {

// Circuit realization of a history: one ancilla per instant, coupled to the
// main system by a controlled-copy gate at that instant, main system
// post-selected at the end and traced out.
struct MonitorProtocol {
  InstantChain chain;
  Ket initial;
  // Post-selection state of the main system, ambient coordinates.  Default:
  // the uniform superposition of the final instant's basis vectors.
  std::optional<Ket> postselect;
};

struct MonitorOutcome {
  // Joint ancilla state in ambient coordinates, latest instant's ancilla
  // leftmost; matches HistoryState::to_computational() up to global phase.
  Ket monitor_state;
  double success_prob = 0.0;
  double fidelity_vs_history = 0.0;
};

// Unitary on main (x) ancilla copying the main system's basis index onto an
// ancilla prepared in basis vector 0:  |v_i>|v_0> -> |v_i>|v_i>.  Completed
// to a unitary by the cyclic increment |v_i>|v_j> -> |v_i>|v_{j+i mod d}>.
// For the computational qubit basis this is CNOT with main as control.
UnitaryOp controlled_copy(const OrthonormalBasis& basis);

// Throws when the post-selection removes (numerically) all amplitude.
MonitorOutcome run_protocol(const MonitorProtocol& p);

// One row of a joint Born-rule distribution over monitor measurements.
struct JointOutcome {
  std::vector<double> values;  // values[k] is the eigenvalue at instant k (ascending instants)
  double probability = 0.0;
};

// Projective joint measurement of one Hermitian observable per instant on
// the monitor state.  Degenerate eigenvalues are merged into eigenspace
// projectors (grouping tolerance eig_tol).  Rows are ordered
// lexicographically, eigenvalues descending at each instant; zero-probability
// rows are kept so the support is always the full outcome grid.
std::vector<JointOutcome> measure_monitors(const MonitorOutcome& outcome,
                                           const std::vector<ComplexMatrix>& observables,
                                           double eig_tol = 1e-9);

}  // namespace histlab

#endif  // HISTLAB_MONITOR_HPP
