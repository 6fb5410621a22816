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

#include "histlab/uncertainty.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "histlab/eig.hpp"
#include "histlab/kernels.hpp"

namespace histlab {

InstantEnsemble InstantEnsemble::uniform(std::vector<DensityMatrix> states) {
  InstantEnsemble e;
  e.priors.assign(states.size(), states.empty() ? 0.0 : 1.0 / static_cast<double>(states.size()));
  e.states = std::move(states);
  e.validate();
  return e;
}

double InstantEnsemble::max_prior() const {
  double m = 0.0;
  for (double p : priors) m = std::max(m, p);
  return m;
}

void InstantEnsemble::validate(double tol) const {
  if (states.empty()) throw std::invalid_argument("InstantEnsemble: no states");
  if (priors.size() != states.size())
    throw std::invalid_argument("InstantEnsemble: need one prior per state");
  double sum = 0.0;
  for (double p : priors) {
    if (p < -1e-12) throw std::invalid_argument("InstantEnsemble: negative prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("InstantEnsemble: priors must sum to 1");
  for (const auto& s : states) {
    if (s.dim() != states.front().dim())
      throw std::invalid_argument("InstantEnsemble: states must share one dimension");
    s.validate(tol);
  }
}

EnergyModel EnergyModel::from_hamiltonian(const ComplexMatrix& h, bool allow_degenerate,
                                          double gap_tol) {
  EnergyModel em;
  const EighResult eig = eigh_hermitian(h);
  if (!allow_degenerate) {
    for (std::size_t i = 0; i + 1 < eig.eigenvalues.size(); ++i) {
      if (eig.eigenvalues[i] - eig.eigenvalues[i + 1] < gap_tol)
        throw std::invalid_argument(
            "EnergyModel: degenerate Hamiltonian rejected (set allow_degenerate to admit)");
    }
  }
  em.hamiltonian = h;
  em.eigenbasis = OrthonormalBasis(eig.eigenvectors);
  em.eigenvalues = eig.eigenvalues;
  em.allow_degenerate = allow_degenerate;
  return em;
}

ComplexMatrix EnergyModel::evolution(double tau) const {
  const std::size_t d = dim();
  ComplexMatrix scaled = eigenbasis.vectors;
  for (std::size_t c = 0; c < d; ++c) {
    const Complex phase = std::polar(1.0, -eigenvalues[c] * tau);
    for (std::size_t r = 0; r < d; ++r) scaled(r, c) *= phase;
  }
  return matmul(scaled, eigenbasis.vectors.dagger());
}

InstantEnsemble instant_marginals(const HistoryState& h) {
  std::vector<DensityMatrix> states;
  states.reserve(h.chain.num_instants());
  for (std::size_t k = 0; k < h.chain.num_instants(); ++k)
    states.push_back(temporal_marginal(h, k));
  return InstantEnsemble::uniform(std::move(states));
}

double helstrom_success(const InstantEnsemble& e) {
  e.validate();
  if (e.size() != 2)
    throw std::invalid_argument("helstrom_success: exactly two states required");
  ComplexMatrix diff = e.states[0].mat;
  diff *= Complex{e.priors[0], 0.0};
  ComplexMatrix second = e.states[1].mat;
  second *= Complex{e.priors[1], 0.0};
  diff -= second;
  return 0.5 * (1.0 + trace_norm(diff));
}

namespace {

double pretty_good_success(const InstantEnsemble& e) {
  const std::size_t d = e.states.front().dim();
  ComplexMatrix s(d, d);
  for (std::size_t i = 0; i < e.size(); ++i) {
    ComplexMatrix w = e.states[i].mat;
    w *= Complex{e.priors[i], 0.0};
    s += w;
  }
  // Inverse square root on the support of S (priors sum to 1, so the
  // spectrum is bounded by 1 and an absolute cutoff is safe).
  const ComplexMatrix s_inv_sqrt = hermitian_function(
      s, [](double lam) { return lam > 1e-12 ? Complex{1.0 / std::sqrt(lam), 0.0} : Complex{}; });
  double success = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const ComplexMatrix b = matmul(s_inv_sqrt, e.states[i].mat);
    success += e.priors[i] * e.priors[i] * matmul(b, b).trace().real();
  }
  return success;
}

std::array<double, 3> bloch_vector(const ComplexMatrix& rho) {
  return {real_expectation(rho, pauli_x()), real_expectation(rho, pauli_y()),
          real_expectation(rho, pauli_z())};
}

double brute_force_projective_success(const InstantEnsemble& e, double resolution) {
  const std::size_t n = e.size();
  if (e.states.front().dim() != 2 || n > 4)
    throw std::invalid_argument(
        "discrimination_success: brute force supports only qubit ensembles with <= 4 states");
  if (resolution <= 0.0 || resolution > 0.5)
    throw std::invalid_argument("discrimination_success: resolution out of range");

  // For a projective measurement along n, outcome +- have operators
  // (I +- n.sigma)/2, so p_i tr(rho_i P+) = (p_i + n . m_i)/2 with
  // m_i = p_i * bloch(rho_i).  The best relabeling picks, per outcome, the
  // state with the largest weighted likelihood.
  std::array<double, 4> mx{}, my{}, mz{}, pr{};
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = bloch_vector(e.states[i].mat);
    mx[i] = e.priors[i] * b[0];
    my[i] = e.priors[i] * b[1];
    mz[i] = e.priors[i] * b[2];
    pr[i] = e.priors[i];
  }

  const double pi = std::numbers::pi;
  const std::size_t n_theta = static_cast<std::size_t>(std::ceil(pi / resolution)) + 1;
  const std::size_t n_phi = static_cast<std::size_t>(std::ceil(2.0 * pi / resolution));
  std::vector<double> cos_phi(n_phi), sin_phi(n_phi);
  for (std::size_t f = 0; f < n_phi; ++f) {
    const double phi = 2.0 * pi * static_cast<double>(f) / static_cast<double>(n_phi);
    cos_phi[f] = std::cos(phi);
    sin_phi[f] = std::sin(phi);
  }

  double best = 0.0;
  for (std::size_t t = 0; t < n_theta; ++t) {
    const double theta = pi * static_cast<double>(t) / static_cast<double>(n_theta - 1);
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    std::array<double, 4> a{}, b{}, c{};
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = st * mx[i];
      b[i] = st * my[i];
      c[i] = pr[i] + ct * mz[i];
    }
    for (std::size_t f = 0; f < n_phi; ++f) {
      const double cf = cos_phi[f];
      const double sf = sin_phi[f];
      double plus = 0.0;
      double minus = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (c[i] + a[i] * cf + b[i] * sf);
        plus = std::max(plus, w);
        minus = std::max(minus, pr[i] - w);
      }
      best = std::max(best, plus + minus);
    }
  }
  return best;
}

}  // namespace

double discrimination_success(const InstantEnsemble& e, DiscriminationStrategy strategy,
                              double resolution) {
  e.validate();
  double raw = 0.0;
  switch (strategy) {
    case DiscriminationStrategy::kRandomGuess:
      raw = e.max_prior();
      break;
    case DiscriminationStrategy::kPrettyGood:
      raw = pretty_good_success(e);
      break;
    case DiscriminationStrategy::kBruteForceProjective:
      raw = brute_force_projective_success(e, resolution);
      break;
  }
  return std::max(raw, e.max_prior());
}

bool pretty_good_is_lower_bound(const InstantEnsemble& e, double tol) {
  if (e.size() <= 2) return false;
  bool all_identical = true;
  for (std::size_t i = 1; i < e.size() && all_identical; ++i)
    all_identical = e.states[i].mat.max_abs_diff(e.states[0].mat) <= tol;
  if (all_identical) return false;
  bool all_orthogonal = true;
  for (std::size_t i = 0; i < e.size() && all_orthogonal; ++i)
    for (std::size_t j = i + 1; j < e.size() && all_orthogonal; ++j)
      all_orthogonal = matmul(e.states[i].mat, e.states[j].mat).trace().real() <= tol;
  return !all_orthogonal;
}

EnergyStatistics energy_statistics(const DensityMatrix& state, const EnergyModel& em) {
  state.validate();
  if (state.dim() != em.dim())
    throw std::invalid_argument("energy_statistics: state and Hamiltonian dimensions differ");

  EnergyStatistics stats;
  stats.mean = real_expectation(state.mat, em.hamiltonian);
  const ComplexMatrix h2 = matmul(em.hamiltonian, em.hamiltonian);
  stats.variance = std::max(0.0, real_expectation(state.mat, h2) - stats.mean * stats.mean);

  double entropy = 0.0;
  for (std::size_t m = 0; m < em.dim(); ++m) {
    const Ket v = em.eigenbasis.vector(m);
    double q = 0.0;
    for (std::size_t r = 0; r < em.dim(); ++r)
      for (std::size_t c = 0; c < em.dim(); ++c)
        q += (std::conj(v.amplitudes[r]) * state.mat(r, c) * v.amplitudes[c]).real();
    if (q > 1e-15) entropy -= q * std::log2(q);
  }
  stats.shannon_entropy_bits = entropy;
  return stats;
}

UncertaintyReport uncertainty_report(const InstantChain& chain, const Ket& initial,
                                     const EnergyModel& em) {
  chain.validate();
  initial.validate();
  if (em.dim() != chain.dim())
    throw std::invalid_argument("uncertainty_report: energy model dimension mismatch");

  UncertaintyReport report;
  for (const auto& step : chain.steps) {
    ComplexMatrix comm = matmul(step.mat, em.hamiltonian);
    comm -= matmul(em.hamiltonian, step.mat);
    if (comm.max_abs() > 1e-9) {
      report.external_energy_model = true;
      break;
    }
  }

  report.energy = energy_statistics(DensityMatrix::from_ket(initial), em);

  const HistoryState h = build_history(chain, initial);
  const InstantEnsemble ensemble = instant_marginals(h);
  report.n_instants = ensemble.size();
  if (ensemble.size() == 2) {
    report.time_success = helstrom_success(ensemble);
    report.time_method = "helstrom";
    report.time_lower_bound = false;
  } else {
    report.time_success =
        discrimination_success(ensemble, DiscriminationStrategy::kPrettyGood);
    report.time_method = "pretty_good";
    report.time_lower_bound = pretty_good_is_lower_bound(ensemble);
  }
  return report;
}

}  // namespace histlab
