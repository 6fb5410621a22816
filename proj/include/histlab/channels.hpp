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

#ifndef HISTLAB_CHANNELS_HPP
#define HISTLAB_CHANNELS_HPP

#include <cstddef>
#include <vector>

#include "histlab/states.hpp"

namespace histlab {

struct KrausChannel {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::vector<ComplexMatrix> kraus_ops;  // each out_dim x in_dim
  // When set, the trace-preservation check is skipped (post-selection style
  // channels); every other invariant still applies.
  bool allow_trace_decreasing = false;

  static KrausChannel from_kraus(std::vector<ComplexMatrix> ops,
                                 bool allow_trace_decreasing = false);
  static KrausChannel identity(std::size_t dim);
  static KrausChannel unitary(const ComplexMatrix& u);
  static KrausChannel depolarizing_qubit();  // fully depolarizing, output I/2

  void validate(double tol = kDefaultTol) const;
};

// Channel as its Choi matrix relative to fixed input/output bases.
// Entry (k*in + i, l*in + j) is Lambda_{kl,ij} = tr(F_kl^dagger Lambda(E_ij))
// with E_ij = |in_i><in_j| and F_kl = |out_k><out_l|.  The output index is
// the slow half of each composite index, which makes complete positivity
// exactly positive semidefiniteness of this matrix.
struct ChoiChannel {
  OrthonormalBasis in_basis;
  OrthonormalBasis out_basis;
  ComplexMatrix choi;

  std::size_t in_dim() const { return in_basis.dim(); }
  std::size_t out_dim() const { return out_basis.dim(); }
};

// Two-instant history of a density-matrix input:
//   H = sum_{kl,ij} Lambda_{kl,ij} rho_ij F_kl (x) E_ij
// with the output (later) factor leftmost.  Hermitian with unit trace for
// CPTP channels, but in general NOT positive semidefinite.
struct HistoryOperator {
  ComplexMatrix matrix;  // (out*in) x (out*in), ambient coordinates
  OrthonormalBasis out_basis;
  OrthonormalBasis in_basis;
};

ChoiChannel choi_from_kraus(const KrausChannel& ch, const OrthonormalBasis& in_basis,
                            const OrthonormalBasis& out_basis);

HistoryOperator channel_history(const DensityMatrix& rho, const ChoiChannel& choi);

// Output-instant marginal: the earlier leg is closed coherently (both input
// indices contracted with the uniform input-basis sum), which recovers
// Lambda(rho) exactly.  An ordinary partial trace over the input factor would
// instead dephase rho in the input basis; coherent closure is the operator
// analogue of finishing the path sum over the earlier instant.
DensityMatrix marginal_out(const HistoryOperator& h);

struct CptpReport {
  bool cp_pass = false;
  bool tp_pass = false;
  double choi_min_eigenvalue = 0.0;  // of the reshaped Choi matrix
  double tp_deviation = 0.0;         // max-abs entry of sum K^dagger K - I
  bool trace_decreasing_allowed = false;
};

CptpReport validate_cptp(const KrausChannel& ch, double tol = kDefaultTol);

// Direct application sum_s K_s rho K_s^dagger.
ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho);

// Kraus operators recovered from the Choi eigendecomposition; eigenvalues
// below cutoff are dropped.  Round trip: applying these reproduces the
// original channel's action.
std::vector<ComplexMatrix> kraus_from_choi(const ChoiChannel& choi, double cutoff = 1e-10);

}  // namespace histlab

#endif  // HISTLAB_CHANNELS_HPP
