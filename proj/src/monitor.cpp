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

#include "histlab/monitor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "histlab/eig.hpp"
#include "histlab/kernels.hpp"

namespace histlab {

UnitaryOp controlled_copy(const OrthonormalBasis& basis) {
  basis.validate();
  const std::size_t d = basis.dim();
  // Cyclic increment on the ancilla, in the instant's basis.
  ComplexMatrix shift_comp(d, d);
  for (std::size_t j = 0; j < d; ++j) shift_comp((j + 1) % d, j) = 1.0;
  const ComplexMatrix shift =
      matmul(basis.vectors, matmul(shift_comp, basis.vectors.dagger()));

  ComplexMatrix gate(d * d, d * d);
  ComplexMatrix shift_pow = ComplexMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    gate += kron(basis.vector(i).projector(), shift_pow);
    shift_pow = matmul(shift, shift_pow);
  }
  return UnitaryOp(std::move(gate));
}

MonitorOutcome run_protocol(const MonitorProtocol& p) {
  p.chain.validate();
  p.initial.validate();
  const std::size_t d = p.chain.dim();
  const std::size_t n = p.chain.num_instants();
  if (p.initial.dim() != d)
    throw std::invalid_argument("run_protocol: initial state dimension mismatch");

  Ket post = p.postselect.value_or(
      Ket(matvec(p.chain.bases.back().vectors, Ket::uniform(d).amplitudes)));
  post.validate();
  if (post.dim() != d)
    throw std::invalid_argument("run_protocol: postselect dimension mismatch");

  std::size_t total = d;
  for (std::size_t k = 0; k < n; ++k) {
    total *= d;
    if (total > kMaxCompositeDim)
      throw std::invalid_argument("run_protocol: composite dimension exceeds the 2^20 guard");
  }

  // Factors: [main, ancilla_N, ..., ancilla_0]; each ancilla starts in its
  // instant basis's vector 0.
  const std::vector<std::size_t> dims(n + 1, d);
  Ket psi = p.initial;
  for (std::size_t k = n; k-- > 0;) psi = tensor(psi, p.chain.bases[k].vector(0));

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t anc_pos = 1 + (n - 1 - k);
    const UnitaryOp copy = controlled_copy(p.chain.bases[k]);
    apply_pair_gate(psi.amplitudes, dims, 0, anc_pos, copy.mat);
    if (k + 1 < n) apply_factor_gate(psi.amplitudes, dims, 0, p.chain.steps[k].mat);
  }

  // Project the main system (slowest factor) onto the post-selection state.
  const std::size_t rest = psi.dim() / d;
  std::vector<Complex> monitor(rest, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < d; ++i) {
    const Complex w = std::conj(post.amplitudes[i]);
    if (w == Complex{0.0, 0.0}) continue;
    for (std::size_t r = 0; r < rest; ++r) monitor[r] += w * psi.amplitudes[i * rest + r];
  }

  double success = 0.0;
  for (const auto& a : monitor) success += std::norm(a);
  if (success < 1e-12)
    throw std::runtime_error("run_protocol: post-selection probability is zero");
  const double scale = 1.0 / std::sqrt(success);
  for (auto& a : monitor) a *= scale;

  MonitorOutcome out;
  out.monitor_state = Ket(std::move(monitor));
  out.success_prob = success;
  out.fidelity_vs_history =
      fidelity(build_history(p.chain, p.initial).to_computational(), out.monitor_state);
  return out;
}

namespace {

struct Eigenspace {
  double value = 0.0;
  ComplexMatrix projector;
};

std::vector<Eigenspace> eigenspaces(const ComplexMatrix& obs, double tol) {
  const EighResult eig = eigh_hermitian(obs, tol);
  const std::size_t d = obs.rows();
  std::vector<Eigenspace> spaces;
  for (std::size_t c = 0; c < d; ++c) {
    if (spaces.empty() || spaces.back().value - eig.eigenvalues[c] > tol) {
      spaces.push_back(Eigenspace{eig.eigenvalues[c], ComplexMatrix(d, d)});
    }
    ComplexMatrix& proj = spaces.back().projector;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t r2 = 0; r2 < d; ++r2)
        proj(r, r2) += eig.eigenvectors(r, c) * std::conj(eig.eigenvectors(r2, c));
  }
  return spaces;
}

}  // namespace

std::vector<JointOutcome> measure_monitors(const MonitorOutcome& outcome,
                                           const std::vector<ComplexMatrix>& observables,
                                           double eig_tol) {
  const std::size_t n = observables.size();
  if (n == 0) throw std::invalid_argument("measure_monitors: need at least one observable");

  std::vector<std::size_t> dims(n);  // factor order: latest instant first
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (!observables[k].is_square() || observables[k].rows() == 0)
      throw std::invalid_argument("measure_monitors: observables must be square");
    dims[n - 1 - k] = observables[k].rows();
    total *= observables[k].rows();
  }
  if (total != outcome.monitor_state.dim())
    throw std::invalid_argument(
        "measure_monitors: observable dimensions do not match the monitor state");

  std::vector<std::vector<Eigenspace>> spaces(n);
  for (std::size_t k = 0; k < n; ++k) spaces[k] = eigenspaces(observables[k], eig_tol);

  std::size_t rows = 1;
  for (const auto& s : spaces) rows *= s.size();

  std::vector<JointOutcome> table;
  table.reserve(rows);
  std::vector<std::size_t> pick(n, 0);  // eigenspace index per instant
  for (std::size_t row = 0; row < rows; ++row) {
    JointOutcome jo;
    jo.values.resize(n);
    Ket psi = outcome.monitor_state;
    for (std::size_t k = 0; k < n; ++k) {
      jo.values[k] = spaces[k][pick[k]].value;
      apply_factor_gate(psi.amplitudes, dims, n - 1 - k, spaces[k][pick[k]].projector);
    }
    double prob = 0.0;
    for (const auto& a : psi.amplitudes) prob += std::norm(a);
    jo.probability = prob;
    table.push_back(std::move(jo));

    // Lexicographic advance, instant 0 slowest.
    for (std::size_t k = n; k-- > 0;) {
      if (++pick[k] < spaces[k].size()) break;
      pick[k] = 0;
    }
  }
  return table;
}

}  // namespace histlab
