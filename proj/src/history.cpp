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

#include "histlab/history.hpp"

#include <stdexcept>
#include <string>

#include "histlab/kernels.hpp"

namespace histlab {
namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t k = 0; k < n; ++k) labels[k] = "t" + std::to_string(k);
  return labels;
}

}  // namespace

InstantChain InstantChain::trivial(std::size_t n_instants, std::size_t dim) {
  return repeated_step(n_instants, ComplexMatrix::identity(dim));
}

InstantChain InstantChain::repeated_step(std::size_t n_instants, const ComplexMatrix& step) {
  if (n_instants < 2) throw std::invalid_argument("InstantChain: need at least 2 instants");
  return from_steps(std::vector<ComplexMatrix>(n_instants - 1, step), step.rows());
}

InstantChain InstantChain::from_steps(const std::vector<ComplexMatrix>& steps, std::size_t dim) {
  InstantChain chain;
  chain.instants = default_labels(steps.size() + 1);
  chain.bases.assign(steps.size() + 1, OrthonormalBasis::computational(dim));
  chain.steps.reserve(steps.size());
  for (const auto& s : steps) chain.steps.emplace_back(UnitaryOp(s));
  chain.validate();
  return chain;
}

std::vector<std::size_t> InstantChain::factor_dims() const {
  std::vector<std::size_t> dims(num_instants());
  for (std::size_t k = 0; k < num_instants(); ++k)
    dims[k] = bases[num_instants() - 1 - k].dim();
  return dims;
}

void InstantChain::validate(double tol) const {
  if (bases.size() < 2) throw std::invalid_argument("InstantChain: need at least 2 instants");
  if (steps.size() + 1 != bases.size())
    throw std::invalid_argument("InstantChain: need exactly one step per adjacent instant pair");
  if (instants.size() != bases.size())
    throw std::invalid_argument("InstantChain: need one label per instant");
  for (const auto& b : bases) b.validate(tol);
  for (std::size_t k = 0; k < steps.size(); ++k) {
    steps[k].validate(tol);
    if (steps[k].dim() != bases[k].dim() || steps[k].dim() != bases[k + 1].dim())
      throw std::invalid_argument("InstantChain: step " + std::to_string(k) +
                                  " dimension does not match its instants");
  }
  std::size_t total = 1;
  for (const auto& b : bases) {
    total *= b.dim();
    if (total > kMaxCompositeDim)
      throw std::invalid_argument("InstantChain: history dimension exceeds the 2^20 guard");
  }
}

Ket HistoryState::to_computational() const {
  const auto dims = chain.factor_dims();
  std::vector<Complex> psi = vector.amplitudes;
  const std::size_t n = chain.num_instants();
  for (std::size_t k = 0; k < n; ++k) {
    // Instant k sits at factor position n-1-k (latest instant leftmost).
    apply_factor_gate(psi, dims, n - 1 - k, chain.bases[k].vectors);
  }
  return Ket(std::move(psi));
}

HistoryState build_history(const InstantChain& chain, const Ket& initial) {
  chain.validate();
  initial.validate();
  if (initial.dim() != chain.bases.front().dim())
    throw std::invalid_argument("build_history: initial state dimension does not match instant 0");

  // Coefficients of the initial state in the instant-0 basis.
  const std::size_t d0 = chain.bases.front().dim();
  std::vector<Complex> cur(d0);
  for (std::size_t i = 0; i < d0; ++i)
    cur[i] = inner(chain.bases.front().vector(i), initial);

  // Grow one instant at a time: the new instant index becomes the slowest
  // digit, and each amplitude picks up the bridge entry from the previous
  // instant's index (the slowest digit of the current vector).
  for (std::size_t k = 0; k < chain.num_steps(); ++k) {
    const ComplexMatrix bridge = bridge_operator(chain, k).matrix;
    const std::size_t dk = chain.bases[k].dim();
    const std::size_t dk1 = chain.bases[k + 1].dim();
    const std::size_t old_size = cur.size();
    const std::size_t block = old_size / dk;  // stride of the slowest digit
    if (old_size * dk1 > kMaxCompositeDim)
      throw std::invalid_argument("build_history: history dimension exceeds the 2^20 guard");
    std::vector<Complex> next(old_size * dk1);
    for (std::size_t j = 0; j < dk1; ++j)
      for (std::size_t flat = 0; flat < old_size; ++flat)
        next[j * old_size + flat] = bridge(j, flat / block) * cur[flat];
    cur = std::move(next);
  }

  HistoryState h;
  h.chain = chain;
  h.vector = Ket(std::move(cur));
  return h;
}

Complex transition_amplitude(const UnitaryOp& u, const Ket& a, const Ket& b) {
  if (u.dim() != a.dim() || u.dim() != b.dim())
    throw std::invalid_argument("transition_amplitude: dimension mismatch");
  return inner(b, Ket(matvec(u.mat, a.amplitudes)));
}

BridgeOperator bridge_operator(const InstantChain& chain, std::size_t k) {
  if (k >= chain.num_steps())
    throw std::invalid_argument("bridge_operator: step index out of range");
  // <basis_{k+1}[n]| U_k |basis_k[m]> = (B_{k+1}^dagger U_k B_k)[n,m].
  ComplexMatrix m = matmul(chain.bases[k + 1].vectors.dagger(),
                           matmul(chain.steps[k].mat, chain.bases[k].vectors));
  BridgeOperator b;
  b.matrix = std::move(m);
  b.from_label = chain.instants[k];
  b.to_label = chain.instants[k + 1];
  return b;
}

DensityMatrix temporal_marginal(const HistoryState& h, std::size_t instant) {
  const std::size_t n = h.chain.num_instants();
  if (instant >= n) throw std::invalid_argument("temporal_marginal: instant index out of range");
  const auto dims = h.chain.factor_dims();
  const std::size_t pos = n - 1 - instant;
  const ComplexMatrix frame = reduced_density(h.vector.amplitudes, dims, {pos});
  // The reduced matrix is in the instant's basis frame; rotate to ambient
  // coordinates.  For computational bases this is the identity conjugation.
  const ComplexMatrix& basis = h.chain.bases[instant].vectors;
  return DensityMatrix(matmul(basis, matmul(frame, basis.dagger())));
}

Ket naive_product_model(const Ket& initial, std::size_t copies) {
  if (copies < 1) throw std::invalid_argument("naive_product_model: copies must be >= 1");
  initial.validate();
  std::size_t total = 1;
  for (std::size_t c = 0; c < copies; ++c) {
    total *= initial.dim();
    if (total > kMaxCompositeDim)
      throw std::invalid_argument("naive_product_model: dimension exceeds the 2^20 guard");
  }
  Ket out = initial;
  for (std::size_t c = 1; c < copies; ++c) out = tensor(out, initial);
  return out;
}

}  // namespace histlab
