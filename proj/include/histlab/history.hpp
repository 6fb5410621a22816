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

#ifndef HISTLAB_HISTORY_HPP
#define HISTLAB_HISTORY_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "histlab/states.hpp"

namespace histlab {

// A discrete evolution: instants t_0..t_N, one orthonormal basis per instant
// and N step unitaries (step k maps instant k to instant k+1).  Steps are
// square, so every instant shares one dimension.
struct InstantChain {
  std::vector<std::string> instants;
  std::vector<OrthonormalBasis> bases;
  std::vector<UnitaryOp> steps;

  // n_instants copies of the computational basis, identity steps.
  static InstantChain trivial(std::size_t n_instants, std::size_t dim);
  // The same step unitary between every pair of adjacent instants,
  // computational bases throughout.
  static InstantChain repeated_step(std::size_t n_instants, const ComplexMatrix& step);
  // Arbitrary steps, computational bases, default labels.
  static InstantChain from_steps(const std::vector<ComplexMatrix>& steps, std::size_t dim);

  std::size_t num_instants() const { return bases.size(); }
  std::size_t num_steps() const { return steps.size(); }
  std::size_t dim() const { return bases.empty() ? 0 : bases.front().dim(); }

  // Product-space factor dimensions, latest instant first (leftmost factor).
  std::vector<std::size_t> factor_dims() const;

  void validate(double tol = kDefaultTol) const;
};

// Entangled history: a normalized vector on the ordered product of the
// per-instant spaces.  Amplitudes are stored in the per-instant basis frame:
// component (i_N, ..., i_0), with the LATEST instant as the slowest
// (leftmost) index, is the amplitude of the basis path
// bases[0][i_0] -> bases[1][i_1] -> ... -> bases[N][i_N].
struct HistoryState {
  InstantChain chain;
  Ket vector;

  std::size_t dim() const { return vector.dim(); }
  // Ambient coordinates: applies each instant's basis matrix to its factor.
  // Two chains describing the same physics in different bases agree here.
  Ket to_computational() const;
};

// The step unitary expressed in the chosen instant bases.  This matrix is
// also the two-time object connecting the instants written as a state: for
// the identity step and matched bases it is sum_i |i><i|.  The from/to labels
// record which instant plays the past (tau+) and future (tau-) end; they
// carry no computational weight.
struct BridgeOperator {
  ComplexMatrix matrix;
  std::string from_label;  // past end, tau+
  std::string to_label;    // future end, tau-
};

// Amplitude of the basis path (i_0..i_N) in the result equals
// <i_0|initial> * prod_k <i_{k+1}|U_k|i_k>, inner products taken in the
// per-instant bases.  `initial` is given in ambient coordinates.
HistoryState build_history(const InstantChain& chain, const Ket& initial);

// <b|U|a>.
Complex transition_amplitude(const UnitaryOp& u, const Ket& a, const Ket& b);

// Bridge for step k (instant k -> k+1): entries <basis_{k+1}[n]|U_k|basis_k[m]>.
BridgeOperator bridge_operator(const InstantChain& chain, std::size_t k);

// Reduced density matrix of the history on one instant, in ambient
// coordinates of that instant's space.
DensityMatrix temporal_marginal(const HistoryState& h, std::size_t instant);

// The deliberately wrong product model |phi> x ... x |phi|, used as contrast:
// it overcounts (independent per-instant outcomes) exactly where the history
// state enforces correlation.
Ket naive_product_model(const Ket& initial, std::size_t copies);

}  // namespace histlab

#endif  // HISTLAB_HISTORY_HPP
