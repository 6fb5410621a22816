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

#include "histlab/tempcorr.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "histlab/eig.hpp"
#include "histlab/kernels.hpp"
#include "histlab/random.hpp"

namespace histlab {

SpinObservable SpinObservable::from_direction(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n < 1e-12) throw std::invalid_argument("SpinObservable: zero direction vector");
  SpinObservable s;
  s.direction = {x / n, y / n, z / n};
  ComplexMatrix m = pauli_x();
  m *= Complex{s.direction[0], 0.0};
  ComplexMatrix my = pauli_y();
  my *= Complex{s.direction[1], 0.0};
  ComplexMatrix mz = pauli_z();
  mz *= Complex{s.direction[2], 0.0};
  m += my;
  m += mz;
  s.matrix = std::move(m);
  return s;
}

void SpinObservable::validate(double tol) const {
  const double n2 = direction[0] * direction[0] + direction[1] * direction[1] +
                    direction[2] * direction[2];
  if (std::abs(n2 - 1.0) > tol)
    throw std::invalid_argument("SpinObservable: direction is not unit length");
  if (matrix.rows() != 2 || matrix.cols() != 2 || !matrix.is_hermitian(tol))
    throw std::invalid_argument("SpinObservable: matrix must be 2x2 Hermitian");
  if (std::abs(matrix.trace()) > tol)
    throw std::invalid_argument("SpinObservable: matrix must be traceless");
  if (matmul(matrix, matrix).max_abs_diff(ComplexMatrix::identity(2)) > tol)
    throw std::invalid_argument("SpinObservable: matrix squared must be the identity");
}

std::vector<std::array<double, 3>> fibonacci_directions(std::size_t count) {
  if (count == 0) throw std::invalid_argument("fibonacci_directions: count must be positive");
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> dirs(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / golden;
    dirs[i] = {r * std::cos(phi), r * std::sin(phi), z};
  }
  return dirs;
}

double PointerDistribution::probability_of(int displacement) const {
  for (std::size_t i = 0; i < displacements.size(); ++i)
    if (displacements[i] == displacement) return probabilities[i];
  return 0.0;
}

namespace {

// Cyclic shift by `amount` (possibly negative) on an L-point lattice.
ComplexMatrix lattice_shift(std::size_t lattice, long long amount) {
  const long long l = static_cast<long long>(lattice);
  const std::size_t m = static_cast<std::size_t>(((amount % l) + l) % l);
  ComplexMatrix s(lattice, lattice);
  for (std::size_t q = 0; q < lattice; ++q) s((q + m) % lattice, q) = 1.0;
  return s;
}

struct Eigenspace {
  double value = 0.0;
  ComplexMatrix projector;
};

std::vector<Eigenspace> eigenspaces(const ComplexMatrix& obs, double tol) {
  const EighResult eig = eigh_hermitian(obs, tol);
  const std::size_t d = obs.rows();
  std::vector<Eigenspace> spaces;
  for (std::size_t c = 0; c < d; ++c) {
    if (spaces.empty() || spaces.back().value - eig.eigenvalues[c] > tol)
      spaces.push_back(Eigenspace{eig.eigenvalues[c], ComplexMatrix(d, d)});
    ComplexMatrix& proj = spaces.back().projector;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t r2 = 0; r2 < d; ++r2)
        proj(r, r2) += eig.eigenvectors(r, c) * std::conj(eig.eigenvectors(r2, c));
  }
  return spaces;
}

double norm_squared(const std::vector<Complex>& v) {
  double acc = 0.0;
  for (const auto& a : v) acc += std::norm(a);
  return acc;
}

}  // namespace

PointerDistribution pointer_two_time(const InstantChain& chain, const Ket& initial,
                                     const SpinObservable& spin, std::size_t t1, std::size_t t2,
                                     std::size_t lattice_dim, int common_offset) {
  chain.validate();
  initial.validate();
  spin.validate();
  if (chain.dim() != 2)
    throw std::invalid_argument("pointer_two_time: spin measurements need a qubit chain");
  if (initial.dim() != 2) throw std::invalid_argument("pointer_two_time: initial must be a qubit");
  if (t1 >= t2 || t2 >= chain.num_instants())
    throw std::invalid_argument("pointer_two_time: need instants t1 < t2 within the chain");
  if (lattice_dim < 5 || lattice_dim % 2 == 0)
    throw std::invalid_argument("pointer_two_time: lattice_dim must be odd and >= 5");
  const long long half = static_cast<long long>((lattice_dim - 1) / 2);
  const long long reach = 1 + std::abs(static_cast<long long>(common_offset));
  if (half < 2 || half < reach)
    throw std::invalid_argument(
        "pointer_two_time: lattice too small, pointer displacement would wrap");

  // Factors: [spin, pointer]; pointer starts centered (position 0).
  const std::vector<std::size_t> dims = {2, lattice_dim};
  Ket psi = tensor(initial, Ket::basis_state(lattice_dim, static_cast<std::size_t>(half)));

  ComplexMatrix p_plus = spin.matrix;
  p_plus += ComplexMatrix::identity(2);
  p_plus *= Complex{0.5, 0.0};
  ComplexMatrix p_minus = ComplexMatrix::identity(2);
  p_minus -= p_plus;

  const auto kick = [&](long long sign) {
    ComplexMatrix g = kron(p_plus, lattice_shift(lattice_dim, sign * (1 + common_offset)));
    g += kron(p_minus, lattice_shift(lattice_dim, sign * (-1 + common_offset)));
    return g;
  };

  for (std::size_t k = 0; k < chain.num_instants(); ++k) {
    if (k == t1) apply_pair_gate(psi.amplitudes, dims, 0, 1, kick(-1));
    if (k == t2) apply_pair_gate(psi.amplitudes, dims, 0, 1, kick(+1));
    if (k < chain.num_steps()) apply_factor_gate(psi.amplitudes, dims, 0, chain.steps[k].mat);
  }

  const ComplexMatrix pointer = reduced_density(psi.amplitudes, dims, {1});
  PointerDistribution dist;
  dist.displacements.resize(lattice_dim);
  dist.probabilities.resize(lattice_dim);
  for (std::size_t q = 0; q < lattice_dim; ++q) {
    dist.displacements[q] = static_cast<int>(static_cast<long long>(q) - half);
    dist.probabilities[q] = pointer(q, q).real();
  }
  return dist;
}

SequentialResult sequential_measure(const SequentialMeasurementPlan& plan, const Ket& initial,
                                    std::uint64_t shots, std::uint64_t seed) {
  plan.chain.validate();
  initial.validate();
  const std::size_t d = plan.chain.dim();
  if (initial.dim() != d)
    throw std::invalid_argument("sequential_measure: initial state dimension mismatch");
  const std::size_t m = plan.measured_instants.size();
  if (m == 0) throw std::invalid_argument("sequential_measure: no measured instants");
  if (plan.observables.size() != m)
    throw std::invalid_argument("sequential_measure: need one observable per measured instant");
  for (std::size_t s = 0; s < m; ++s) {
    if (plan.measured_instants[s] >= plan.chain.num_instants())
      throw std::invalid_argument("sequential_measure: measured instant out of range");
    if (s > 0 && plan.measured_instants[s] <= plan.measured_instants[s - 1])
      throw std::invalid_argument("sequential_measure: measured instants must increase");
    if (plan.observables[s].rows() != d || plan.observables[s].cols() != d)
      throw std::invalid_argument("sequential_measure: observable dimension mismatch");
  }

  std::vector<std::vector<Eigenspace>> spaces(m);
  std::size_t rows = 1;
  for (std::size_t s = 0; s < m; ++s) {
    spaces[s] = eigenspaces(plan.observables[s], 1e-9);
    rows *= spaces[s].size();
  }

  SequentialResult result;
  result.shots = shots;
  result.exact.reserve(rows);
  result.counts.assign(rows, 0);

  // Exact joint distribution: probability of a tuple is the squared norm of
  // P_m U ... P_1 U |initial>, which already encodes the collapses.
  std::vector<std::size_t> pick(m, 0);
  for (std::size_t row = 0; row < rows; ++row) {
    Ket psi = initial;
    std::size_t at = 0;
    SequentialOutcome oc;
    oc.values.resize(m);
    for (std::size_t s = 0; s < m; ++s) {
      for (; at < plan.measured_instants[s]; ++at)
        psi = Ket(matvec(plan.chain.steps[at].mat, psi.amplitudes));
      psi = Ket(matvec(spaces[s][pick[s]].projector, psi.amplitudes));
      oc.values[s] = spaces[s][pick[s]].value;
    }
    oc.probability = norm_squared(psi.amplitudes);
    result.exact.push_back(std::move(oc));
    for (std::size_t s = m; s-- > 0;) {
      if (++pick[s] < spaces[s].size()) break;
      pick[s] = 0;
    }
  }

  // Monte-Carlo sampling: inverse-CDF over eigenspaces in fixed (descending
  // eigenvalue) order at every measured instant.
  Rng rng(seed);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    Ket psi = initial;
    std::size_t at = 0;
    std::size_t row = 0;
    for (std::size_t s = 0; s < m; ++s) {
      for (; at < plan.measured_instants[s]; ++at)
        psi = Ket(matvec(plan.chain.steps[at].mat, psi.amplitudes));
      const double u = rng.uniform();
      double cdf = 0.0;
      std::size_t chosen = spaces[s].size() - 1;
      Ket collapsed;
      for (std::size_t g = 0; g < spaces[s].size(); ++g) {
        Ket branch = Ket(matvec(spaces[s][g].projector, psi.amplitudes));
        const double p = norm_squared(branch.amplitudes);
        cdf += p;
        if (u < cdf || g + 1 == spaces[s].size()) {
          chosen = g;
          collapsed = std::move(branch);
          break;
        }
      }
      const double p_chosen = norm_squared(collapsed.amplitudes);
      if (p_chosen < 1e-15)
        throw std::runtime_error("sequential_measure: sampled a zero-probability branch");
      const double scale = 1.0 / std::sqrt(p_chosen);
      for (auto& a : collapsed.amplitudes) a *= scale;
      psi = std::move(collapsed);
      row = row * spaces[s].size() + chosen;
    }
    ++result.counts[row];
  }
  return result;
}

double lg_correlator(const InstantChain& chain, const DensityMatrix& initial,
                     const ComplexMatrix& q_obs, std::size_t i, std::size_t j) {
  chain.validate();
  initial.validate();
  if (i >= j || j >= chain.num_instants())
    throw std::invalid_argument("lg_correlator: need instants i < j within the chain");
  if (initial.dim() != chain.dim() || q_obs.rows() != chain.dim() || !q_obs.is_square())
    throw std::invalid_argument("lg_correlator: dimension mismatch");

  const auto spaces = eigenspaces(q_obs, 1e-9);
  for (const auto& sp : spaces)
    if (std::abs(std::abs(sp.value) - 1.0) > 1e-9)
      throw std::invalid_argument("lg_correlator: observable eigenvalues must be +-1");

  const auto evolve = [&](ComplexMatrix rho, std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k)
      rho = matmul(chain.steps[k].mat, matmul(rho, chain.steps[k].mat.dagger()));
    return rho;
  };

  const ComplexMatrix rho_i = evolve(initial.mat, 0, i);
  double c = 0.0;
  for (const auto& a : spaces) {
    const ComplexMatrix branch =
        evolve(matmul(a.projector, matmul(rho_i, a.projector)), i, j);
    for (const auto& b : spaces)
      c += a.value * b.value * matmul(b.projector, branch).trace().real();
  }
  return c;
}

std::vector<LgRow> lg_sweep(const std::vector<double>& angles, const ComplexMatrix& q_obs,
                            const DensityMatrix& initial) {
  if (angles.empty()) throw std::invalid_argument("lg_sweep: empty angle grid");
  std::vector<LgRow> rows;
  rows.reserve(angles.size());
  for (double theta : angles) {
    const InstantChain chain = InstantChain::repeated_step(3, rotation_y(theta));
    LgRow row;
    row.theta = theta;
    row.c12 = lg_correlator(chain, initial, q_obs, 0, 1);
    row.c23 = lg_correlator(chain, initial, q_obs, 1, 2);
    row.c13 = lg_correlator(chain, initial, q_obs, 0, 2);
    row.k = row.c12 + row.c23 - row.c13;
    row.violated = row.k > 1.0 + 1e-9;
    rows.push_back(row);
  }
  return rows;
}

double lg_classical_max() {
  double best = -3.0;
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        const double k = static_cast<double>(s1 * s2 + s2 * s3 - s1 * s3);
        if (k > best) best = k;
      }
  return best;
}

}  // namespace histlab
