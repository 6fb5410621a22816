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

#ifndef HISTLAB_TEMPCORR_HPP
#define HISTLAB_TEMPCORR_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "histlab/history.hpp"

namespace histlab {

// Qubit spin component r . sigma for a unit direction r; eigenvalues +-1.
struct SpinObservable {
  std::array<double, 3> direction{0.0, 0.0, 1.0};
  ComplexMatrix matrix;

  static SpinObservable from_direction(double x, double y, double z);
  void validate(double tol = kDefaultTol) const;
};

// Evenly spread unit directions (Fibonacci sphere), for direction sweeps.
std::vector<std::array<double, 3>> fibonacci_directions(std::size_t count);

// Final pointer-position distribution relative to the initial (centered)
// position.  Entries cover the whole lattice, displacements ascending.
struct PointerDistribution {
  std::vector<int> displacements;
  std::vector<double> probabilities;

  double probability_of(int displacement) const;
};

// Von Neumann two-time difference measurement: a pointer on a finite odd
// lattice is kicked by -(s + offset) positions at instant t1 and by
// +(s + offset) at instant t2, where s is the spin eigenvalue.  The impulsive
// couplings of the continuum model become controlled cyclic shifts; the
// lattice precondition excludes wraparound, so the readout is exactly the
// difference of the two spin values (offset cancels).
PointerDistribution pointer_two_time(const InstantChain& chain, const Ket& initial,
                                     const SpinObservable& spin, std::size_t t1, std::size_t t2,
                                     std::size_t lattice_dim, int common_offset = 0);

struct SequentialMeasurementPlan {
  InstantChain chain;
  std::vector<std::size_t> measured_instants;  // strictly increasing
  std::vector<ComplexMatrix> observables;      // one per measured instant
};

struct SequentialOutcome {
  std::vector<double> values;  // eigenvalue per measured instant, ascending instants
  double probability = 0.0;    // exact Born-rule probability with collapse
};

struct SequentialResult {
  // Full joint distribution: lexicographic rows, eigenvalues descending at
  // each instant (so a qubit gives (+1,+1), (+1,-1), (-1,+1), (-1,-1)).
  std::vector<SequentialOutcome> exact;
  // Monte-Carlo counts aligned with `exact`; sum equals shots.
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
};

// Projective sequential measurement with collapse between instants.  The
// exact distribution is computed by eigenspace path enumeration; sampling
// uses inverse-CDF draws from a generator seeded per call.
SequentialResult sequential_measure(const SequentialMeasurementPlan& plan, const Ket& initial,
                                    std::uint64_t shots, std::uint64_t seed);

// Two-time correlator C_ij = sum_{a,b} a b P(a at i, b at j) for a +-1
// observable, with projective collapse at the earlier instant (the invasive
// sequential scheme macrorealism arguments contrast against).
double lg_correlator(const InstantChain& chain, const DensityMatrix& initial,
                     const ComplexMatrix& q_obs, std::size_t i, std::size_t j);

struct LgRow {
  double theta = 0.0;
  double c12 = 0.0;
  double c23 = 0.0;
  double c13 = 0.0;
  double k = 0.0;
  bool violated = false;  // k exceeds the macrorealist bound 1
};

// K(theta) = C12 + C23 - C13 on a 3-instant chain whose steps are the y
// rotation exp(-i theta Y / 2).
std::vector<LgRow> lg_sweep(const std::vector<double>& angles, const ComplexMatrix& q_obs,
                            const DensityMatrix& initial);

// Largest K attainable by deterministic per-instant outcome assignments
// (all 8 of them): the classical bound, always exactly 1.
double lg_classical_max();

}  // namespace histlab

#endif  // HISTLAB_TEMPCORR_HPP
