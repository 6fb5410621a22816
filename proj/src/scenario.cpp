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

#include "histlab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

#include "histlab/eig.hpp"
#include "histlab/json_io.hpp"
#include "histlab/kernels.hpp"
#include "histlab/monitor.hpp"
#include "histlab/version.hpp"

namespace histlab {

namespace {

using nlohmann::json;

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "scenario has " + std::to_string(problems.size()) +
                    (problems.size() == 1 ? " problem:" : " problems:");
  for (const auto& p : problems) out += "\n  - " + p;
  return out;
}

void check_keys(const json& j, const std::string& context,
                std::initializer_list<const char*> allowed, std::vector<std::string>& problems) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) problems.push_back(context + ": unknown key \"" + it.key() + "\"");
  }
}

const json* member(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::optional<double> want_number(const json& j, const std::string& context,
                                  std::vector<std::string>& problems) {
  if (j.is_number()) return j.get<double>();
  problems.push_back(context + ": expected a number");
  return std::nullopt;
}

std::optional<std::uint64_t> want_uint(const json& j, const std::string& context,
                                       std::vector<std::string>& problems) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  problems.push_back(context + ": expected a non-negative integer");
  return std::nullopt;
}

std::optional<bool> want_bool(const json& j, const std::string& context,
                              std::vector<std::string>& problems) {
  if (j.is_boolean()) return j.get<bool>();
  problems.push_back(context + ": expected true or false");
  return std::nullopt;
}

std::optional<std::string> want_string(const json& j, const std::string& context,
                                       std::vector<std::string>& problems) {
  if (j.is_string()) return j.get<std::string>();
  problems.push_back(context + ": expected a string");
  return std::nullopt;
}

// A matrix value is either an inline {"rows","cols","re","im"} object, the
// name of an entry in the top-level "matrices" table, or a builtin gate name.
std::optional<ComplexMatrix> resolve_matrix(const json& node,
                                            const std::map<std::string, ComplexMatrix>& named,
                                            const std::string& context,
                                            std::vector<std::string>& problems) {
  if (node.is_string()) {
    const std::string name = node.get<std::string>();
    auto it = named.find(name);
    if (it != named.end()) return it->second;
    try {
      return builtin_matrix(name);
    } catch (const std::exception&) {
      problems.push_back(context + ": unknown matrix name \"" + name + "\"");
      return std::nullopt;
    }
  }
  if (node.is_object()) {
    try {
      return matrix_from_json(node, context);
    } catch (const std::exception& e) {
      problems.push_back(e.what());
      return std::nullopt;
    }
  }
  problems.push_back(context + ": expected a matrix object or a matrix name");
  return std::nullopt;
}

std::optional<Ket> resolve_ket(const json& node, const std::map<std::string, ComplexMatrix>& named,
                               const std::string& context, std::vector<std::string>& problems) {
  auto m = resolve_matrix(node, named, context, problems);
  if (!m) return std::nullopt;
  if (m->cols() != 1) {
    problems.push_back(context + ": expected a column vector (cols == 1), got " +
                       std::to_string(m->rows()) + "x" + std::to_string(m->cols()));
    return std::nullopt;
  }
  std::vector<Complex> amps(m->rows());
  for (std::size_t i = 0; i < m->rows(); ++i) amps[i] = (*m)(i, 0);
  return Ket(std::move(amps));
}

std::string dim_str(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

struct ParseState {
  std::vector<std::string> problems;
  std::map<std::string, ComplexMatrix> named;
  Scenario s;
};

void parse_chain(const json& node, ParseState& ps) {
  auto& problems = ps.problems;
  if (!node.is_object()) {
    problems.push_back("chain: expected an object");
    return;
  }
  check_keys(node, "chain", {"instants", "dim", "step", "steps", "bases"}, problems);

  std::optional<std::uint64_t> instants;
  if (const json* v = member(node, "instants"))
    instants = want_uint(*v, "chain.instants", problems);
  else
    problems.push_back("chain: missing required key \"instants\"");
  if (instants && *instants < 2) {
    problems.push_back("chain.instants: need at least 2 instants, got " +
                       std::to_string(*instants));
    instants.reset();
  }
  if (!instants) return;
  const std::size_t n = static_cast<std::size_t>(*instants);

  const json* step_one = member(node, "step");
  const json* step_many = member(node, "steps");
  if (step_one && step_many) {
    problems.push_back("chain: give either \"step\" or \"steps\", not both");
    return;
  }

  std::vector<ComplexMatrix> steps;
  bool steps_ok = true;
  if (step_many) {
    if (!step_many->is_array()) {
      problems.push_back("chain.steps: expected an array of matrices");
      return;
    }
    if (step_many->size() != n - 1) {
      problems.push_back("chain.steps: expected " + std::to_string(n - 1) +
                         " step(s) for " + std::to_string(n) + " instants, got " +
                         std::to_string(step_many->size()));
      return;
    }
    for (std::size_t k = 0; k < step_many->size(); ++k) {
      auto m = resolve_matrix((*step_many)[k], ps.named, "chain.steps[" + std::to_string(k) + "]",
                              problems);
      if (!m) {
        steps_ok = false;
        continue;
      }
      steps.push_back(std::move(*m));
    }
  } else if (step_one) {
    auto m = resolve_matrix(*step_one, ps.named, "chain.step", problems);
    if (!m) return;
    steps.assign(n - 1, *m);
  } else if (const json* dv = member(node, "dim")) {
    auto d = want_uint(*dv, "chain.dim", problems);
    if (!d || *d == 0) {
      if (d) problems.push_back("chain.dim: must be positive");
      return;
    }
    steps.assign(n - 1, ComplexMatrix::identity(static_cast<std::size_t>(*d)));
  } else {
    problems.push_back("chain: need \"step\", \"steps\", or \"dim\" (identity steps)");
    return;
  }
  if (!steps_ok) return;

  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (!steps[k].is_square()) {
      problems.push_back("chain.steps[" + std::to_string(k) + "]: step must be square, got " +
                         dim_str(steps[k]));
      steps_ok = false;
    } else if (steps[k].rows() != steps.front().rows()) {
      problems.push_back("chain.steps[" + std::to_string(k) + "] is " + dim_str(steps[k]) +
                         " but chain.steps[0] is " + dim_str(steps.front()));
      steps_ok = false;
    }
  }
  if (!steps_ok) return;
  const std::size_t dim = steps.front().rows();
  if (const json* dv = member(node, "dim")) {
    auto d = want_uint(*dv, "chain.dim", problems);
    if (d && *d != dim) {
      problems.push_back("chain.dim is " + std::to_string(*d) + " but chain.steps[0] is " +
                         dim_str(steps.front()));
      return;
    }
  }

  InstantChain chain = InstantChain::from_steps(steps, dim);
  if (const json* bv = member(node, "bases")) {
    if (!bv->is_array() || bv->size() != n) {
      problems.push_back("chain.bases: expected an array of " + std::to_string(n) + " matrices");
      return;
    }
    bool bases_ok = true;
    for (std::size_t k = 0; k < n; ++k) {
      auto m = resolve_matrix((*bv)[k], ps.named, "chain.bases[" + std::to_string(k) + "]",
                              problems);
      if (!m) {
        bases_ok = false;
        continue;
      }
      if (m->rows() != dim || m->cols() != dim) {
        problems.push_back("chain.bases[" + std::to_string(k) + "] is " + dim_str(*m) +
                           " but chain.steps[0] is " + dim_str(steps.front()));
        bases_ok = false;
        continue;
      }
      chain.bases[k] = OrthonormalBasis(std::move(*m));
    }
    if (!bases_ok) return;
  }
  try {
    chain.validate(ps.s.tolerance);
  } catch (const std::exception& e) {
    problems.push_back(std::string("chain: ") + e.what());
    return;
  }
  ps.s.chain = std::move(chain);
}

void parse_channel(const json& node, ParseState& ps) {
  auto& problems = ps.problems;
  if (!node.is_object()) {
    problems.push_back("channel: expected an object");
    return;
  }
  check_keys(node, "channel", {"kraus", "choi", "in_dim", "out_dim", "allow_trace_decreasing"},
             problems);
  bool allow_td = false;
  if (const json* v = member(node, "allow_trace_decreasing"))
    allow_td = want_bool(*v, "channel.allow_trace_decreasing", problems).value_or(false);

  const json* kraus = member(node, "kraus");
  const json* choi = member(node, "choi");
  if ((kraus == nullptr) == (choi == nullptr)) {
    problems.push_back("channel: give exactly one of \"kraus\" or \"choi\"");
    return;
  }

  if (kraus) {
    if (!kraus->is_array() || kraus->empty()) {
      problems.push_back("channel.kraus: expected a non-empty array of matrices");
      return;
    }
    std::vector<ComplexMatrix> ops;
    for (std::size_t i = 0; i < kraus->size(); ++i) {
      auto m = resolve_matrix((*kraus)[i], ps.named, "channel.kraus[" + std::to_string(i) + "]",
                              problems);
      if (!m) return;
      ops.push_back(std::move(*m));
    }
    try {
      ps.s.channel = KrausChannel::from_kraus(std::move(ops), allow_td);
    } catch (const std::exception& e) {
      problems.push_back(std::string("channel.kraus: ") + e.what());
    }
    return;
  }

  auto m = resolve_matrix(*choi, ps.named, "channel.choi", problems);
  if (!m) return;
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  if (const json* v = member(node, "in_dim"))
    in_dim = static_cast<std::size_t>(want_uint(*v, "channel.in_dim", problems).value_or(0));
  if (const json* v = member(node, "out_dim"))
    out_dim = static_cast<std::size_t>(want_uint(*v, "channel.out_dim", problems).value_or(0));
  if (in_dim == 0 && out_dim == 0) {
    const auto root = static_cast<std::size_t>(std::llround(std::sqrt(double(m->rows()))));
    if (root * root != m->rows()) {
      problems.push_back("channel.choi: rows " + std::to_string(m->rows()) +
                         " is not a perfect square; give in_dim/out_dim");
      return;
    }
    in_dim = out_dim = root;
  } else if (in_dim == 0 || out_dim == 0) {
    problems.push_back("channel: give both in_dim and out_dim or neither");
    return;
  }
  if (!m->is_square() || m->rows() != in_dim * out_dim) {
    problems.push_back("channel.choi is " + dim_str(*m) + " but in_dim*out_dim is " +
                       std::to_string(in_dim * out_dim));
    return;
  }
  ps.s.choi = ChoiChannel{OrthonormalBasis::computational(in_dim),
                          OrthonormalBasis::computational(out_dim), std::move(*m)};
}

void parse_sequential(const json& node, ParseState& ps) {
  auto& problems = ps.problems;
  if (!node.is_object()) {
    problems.push_back("sequential: expected an object");
    return;
  }
  check_keys(node, "sequential", {"instants", "observables", "shots"}, problems);
  SequentialSpec spec;
  const json* iv = member(node, "instants");
  const json* ov = member(node, "observables");
  if (!iv || !iv->is_array() || iv->empty()) {
    problems.push_back("sequential.instants: expected a non-empty array of instant indices");
    return;
  }
  for (std::size_t k = 0; k < iv->size(); ++k) {
    auto u = want_uint((*iv)[k], "sequential.instants[" + std::to_string(k) + "]", problems);
    if (!u) return;
    spec.instants.push_back(static_cast<std::size_t>(*u));
  }
  if (!std::is_sorted(spec.instants.begin(), spec.instants.end()) ||
      std::adjacent_find(spec.instants.begin(), spec.instants.end()) != spec.instants.end()) {
    problems.push_back("sequential.instants: must be strictly increasing");
    return;
  }
  if (!ov || !ov->is_array() || ov->size() != spec.instants.size()) {
    problems.push_back("sequential.observables: expected one matrix per measured instant (" +
                       std::to_string(spec.instants.size()) + ")");
    return;
  }
  for (std::size_t k = 0; k < ov->size(); ++k) {
    auto m = resolve_matrix((*ov)[k], ps.named, "sequential.observables[" + std::to_string(k) + "]",
                            problems);
    if (!m) return;
    spec.observables.push_back(std::move(*m));
  }
  if (const json* v = member(node, "shots"))
    spec.shots = want_uint(*v, "sequential.shots", problems).value_or(0);
  ps.s.sequential = std::move(spec);
}

void parse_lg(const json& node, ParseState& ps) {
  auto& problems = ps.problems;
  if (!node.is_object()) {
    problems.push_back("lg: expected an object");
    return;
  }
  check_keys(node, "lg", {"theta_min", "theta_max", "steps", "observable"}, problems);
  LgSpec spec;
  bool ok = true;
  if (const json* v = member(node, "theta_min")) {
    auto d = want_number(*v, "lg.theta_min", problems);
    ok = ok && d.has_value();
    spec.theta_min = d.value_or(0.0);
  } else {
    problems.push_back("lg: missing required key \"theta_min\"");
    ok = false;
  }
  if (const json* v = member(node, "theta_max")) {
    auto d = want_number(*v, "lg.theta_max", problems);
    ok = ok && d.has_value();
    spec.theta_max = d.value_or(0.0);
  } else {
    problems.push_back("lg: missing required key \"theta_max\"");
    ok = false;
  }
  if (const json* v = member(node, "steps")) {
    auto u = want_uint(*v, "lg.steps", problems);
    ok = ok && u.has_value();
    spec.steps = static_cast<std::size_t>(u.value_or(0));
  } else {
    problems.push_back("lg: missing required key \"steps\"");
    ok = false;
  }
  if (!ok) return;
  if (spec.steps == 0) {
    problems.push_back("lg.steps: need at least one grid point");
    return;
  }
  if (spec.theta_max < spec.theta_min) {
    problems.push_back("lg: theta_max must be >= theta_min");
    return;
  }
  if (spec.steps == 1 && spec.theta_max != spec.theta_min) {
    problems.push_back("lg: a single-point sweep needs theta_min == theta_max");
    return;
  }
  if (const json* v = member(node, "observable")) {
    auto m = resolve_matrix(*v, ps.named, "lg.observable", problems);
    if (!m) return;
    if (m->rows() != 2 || m->cols() != 2) {
      problems.push_back("lg.observable: expected a 2x2 matrix, got " + dim_str(*m));
      return;
    }
    spec.observable = std::move(*m);
  } else {
    spec.observable = pauli_z();
  }
  ps.s.lg = std::move(spec);
}

json outcome_rows(const SequentialResult& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.exact.size(); ++i) {
    json row;
    row["values"] = r.exact[i].values;
    row["probability"] = r.exact[i].probability;
    if (r.shots > 0) row["count"] = r.counts[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

json analysis_history(const Scenario& s) {
  const HistoryState h = build_history(*s.chain, *s.initial);
  json block;
  block["dim"] = h.dim();
  block["factor_dims"] = s.chain->factor_dims();
  block["norm"] = h.vector.norm();
  block["state"] = ket_to_json(h.vector);
  block["state_ambient"] = ket_to_json(h.to_computational());
  json marginals = json::array();
  json purities = json::array();
  for (std::size_t k = 0; k < s.chain->num_instants(); ++k) {
    const DensityMatrix m = temporal_marginal(h, k);
    marginals.push_back(matrix_to_json(m.mat));
    purities.push_back(m.purity());
  }
  block["marginals"] = std::move(marginals);
  block["marginal_purities"] = std::move(purities);
  return block;
}

json analysis_monitor(const Scenario& s) {
  MonitorProtocol p{*s.chain, *s.initial, s.postselect};
  const MonitorOutcome out = run_protocol(p);
  json block;
  block["success_prob"] = out.success_prob;
  block["fidelity"] = out.fidelity_vs_history;
  block["monitor_state"] = ket_to_json(out.monitor_state);
  const std::vector<std::size_t> dims = s.chain->factor_dims();
  const std::size_t n = s.chain->num_instants();
  json marginals = json::array();
  for (std::size_t k = 0; k < n; ++k)
    marginals.push_back(matrix_to_json(
        reduced_density(out.monitor_state.amplitudes, dims, {n - 1 - k})));
  block["marginals"] = std::move(marginals);
  return block;
}

json analysis_channel(const Scenario& s) {
  ChoiChannel choi;
  if (s.choi) {
    choi = *s.choi;
  } else {
    choi = choi_from_kraus(*s.channel, OrthonormalBasis::computational(s.channel->in_dim),
                           OrthonormalBasis::computational(s.channel->out_dim));
  }
  const HistoryOperator h = channel_history(*s.rho, choi);
  json block;
  block["history_operator"] = matrix_to_json(h.matrix);
  const Complex tr = h.matrix.trace();
  block["trace_re"] = tr.real();
  block["trace_im"] = tr.imag();
  block["hermiticity_residual"] = h.matrix.max_abs_diff(h.matrix.dagger());
  const auto evs = eigvals_hermitian(h.matrix, 1e-6);
  block["min_eigenvalue"] = evs.back();
  block["max_eigenvalue"] = evs.front();
  block["marginal_out"] = matrix_to_json(marginal_out(h).mat);
  if (s.channel) {
    const CptpReport rep = validate_cptp(*s.channel, s.tolerance);
    json c;
    c["cp_pass"] = rep.cp_pass;
    c["tp_pass"] = rep.tp_pass;
    c["choi_min_eigenvalue"] = rep.choi_min_eigenvalue;
    c["tp_deviation"] = rep.tp_deviation;
    block["cptp"] = std::move(c);
  }
  return block;
}

json analysis_pointer(const Scenario& s) {
  const PointerSpec& ps = *s.pointer;
  const PointerDistribution d = pointer_two_time(*s.chain, *s.initial, *s.spin, ps.t1, ps.t2,
                                                 ps.lattice_dim, ps.offset);
  json block;
  block["displacements"] = d.displacements;
  block["probabilities"] = d.probabilities;
  block["p_zero"] = d.probability_of(0);
  double mean = 0.0;
  for (std::size_t i = 0; i < d.displacements.size(); ++i)
    mean += d.displacements[i] * d.probabilities[i];
  block["mean"] = mean;
  return block;
}

json analysis_sequential(const Scenario& s) {
  const SequentialSpec& spec = *s.sequential;
  SequentialMeasurementPlan plan{*s.chain, spec.instants, spec.observables};
  const SequentialResult r = sequential_measure(plan, *s.initial, spec.shots, s.seed);
  json block;
  block["shots"] = r.shots;
  block["outcomes"] = outcome_rows(r);
  return block;
}

json analysis_lg(const Scenario& s) {
  const LgSpec& spec = *s.lg;
  std::vector<double> angles(spec.steps);
  for (std::size_t i = 0; i < spec.steps; ++i)
    angles[i] = spec.steps == 1 ? spec.theta_min
                                : spec.theta_min + (spec.theta_max - spec.theta_min) *
                                                       double(i) / double(spec.steps - 1);
  DensityMatrix init = s.rho ? *s.rho : DensityMatrix::maximally_mixed(2);
  const auto rows = lg_sweep(angles, spec.observable, init);
  json block;
  json jrows = json::array();
  std::size_t violated = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const LgRow& r = rows[i];
    json row;
    row["theta"] = r.theta;
    row["c12"] = r.c12;
    row["c23"] = r.c23;
    row["c13"] = r.c13;
    row["k"] = r.k;
    row["violated"] = r.violated;
    jrows.push_back(std::move(row));
    if (r.violated) ++violated;
    if (r.k > rows[best].k) best = i;
  }
  block["rows"] = std::move(jrows);
  block["max_k"] = rows[best].k;
  block["theta_at_max"] = rows[best].theta;
  block["violated_count"] = violated;
  block["classical_max"] = lg_classical_max();
  return block;
}

json analysis_uncertainty(const Scenario& s) {
  const EnergyModel em =
      EnergyModel::from_hamiltonian(s.energy->hamiltonian, s.energy->allow_degenerate);
  const UncertaintyReport r = uncertainty_report(*s.chain, *s.initial, em);
  json block;
  json energy;
  energy["mean"] = r.energy.mean;
  energy["variance"] = r.energy.variance;
  energy["entropy_bits"] = r.energy.shannon_entropy_bits;
  block["energy"] = std::move(energy);
  json time;
  time["success"] = r.time_success;
  time["method"] = r.time_method;
  time["lower_bound"] = r.time_lower_bound;
  time["n_instants"] = r.n_instants;
  block["time"] = std::move(time);
  block["external_energy_model"] = r.external_energy_model;
  return block;
}

json analysis_discrimination(const Scenario& s) {
  const HistoryState h = build_history(*s.chain, *s.initial);
  const InstantEnsemble e = instant_marginals(h);
  const DiscriminationSpec& spec = *s.discrimination;
  json block;
  block["success"] = discrimination_success(e, spec.strategy, spec.resolution);
  switch (spec.strategy) {
    case DiscriminationStrategy::kPrettyGood:
      block["strategy"] = "pretty_good";
      break;
    case DiscriminationStrategy::kBruteForceProjective:
      block["strategy"] = "brute_force_projective";
      break;
    case DiscriminationStrategy::kRandomGuess:
      block["strategy"] = "random_guess";
      break;
  }
  block["n_states"] = e.size();
  block["max_prior"] = e.max_prior();
  block["lower_bound"] = pretty_good_is_lower_bound(e);
  if (e.size() == 2) block["helstrom"] = helstrom_success(e);
  return block;
}

// Dotted-path lookup inside the analyses object; integer tokens index arrays.
const json* walk_path(const json& root, const std::string& path) {
  const json* cur = &root;
  std::size_t start = 0;
  while (start <= path.size()) {
    const std::size_t dot = path.find('.', start);
    const std::string token =
        path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (token.empty()) return nullptr;
    if (cur->is_object()) {
      auto it = cur->find(token);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    } else if (cur->is_array()) {
      char* end = nullptr;
      const unsigned long idx = std::strtoul(token.c_str(), &end, 10);
      if (end == nullptr || *end != '\0' || idx >= cur->size()) return nullptr;
      cur = &(*cur)[idx];
    } else {
      return nullptr;
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return cur;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

Scenario parse_scenario(const std::string& path) {
  const json j = read_json_file(path);
  return parse_scenario_json(j, path);
}

Scenario parse_scenario_json(const json& j, const std::string& context) {
  ParseState ps;
  auto& problems = ps.problems;
  Scenario& s = ps.s;

  if (!j.is_object()) {
    problems.push_back(context + ": scenario must be a JSON object");
    throw ScenarioError(std::move(problems));
  }
  check_keys(j, context,
             {"name", "seed", "tolerance", "matrices", "chain", "initial", "channel", "rho",
              "monitor", "spin", "pointer", "sequential", "lg", "energy", "discrimination",
              "analyses", "expect"},
             problems);

  if (const json* v = member(j, "name")) {
    auto n = want_string(*v, "name", problems);
    if (n && n->empty()) problems.push_back("name: must not be empty");
    s.name = n.value_or("");
  } else {
    problems.push_back("missing required key \"name\"");
  }

  if (const json* v = member(j, "seed")) {
    auto u = want_uint(*v, "seed", problems);
    if (u) {
      s.seed = *u;
      s.has_seed = true;
    }
  }

  if (const json* v = member(j, "tolerance")) {
    auto d = want_number(*v, "tolerance", problems);
    if (d && (!(*d > 0.0) || !std::isfinite(*d)))
      problems.push_back("tolerance: must be a positive finite number");
    else if (d)
      s.tolerance = *d;
  }

  if (const json* v = member(j, "matrices")) {
    if (!v->is_object()) {
      problems.push_back("matrices: expected an object of named matrices");
    } else {
      for (auto it = v->begin(); it != v->end(); ++it) {
        auto m = resolve_matrix(it.value(), ps.named, "matrices." + it.key(), problems);
        if (m) ps.named.emplace(it.key(), std::move(*m));
      }
    }
  }

  if (const json* v = member(j, "chain")) parse_chain(*v, ps);

  if (const json* v = member(j, "initial")) {
    auto k = resolve_ket(*v, ps.named, "initial", problems);
    if (k) {
      try {
        k->validate(s.tolerance);
        s.initial = std::move(*k);
      } catch (const std::exception& e) {
        problems.push_back(std::string("initial: ") + e.what());
      }
    }
  }

  if (const json* v = member(j, "channel")) parse_channel(*v, ps);

  if (const json* v = member(j, "rho")) {
    auto m = resolve_matrix(*v, ps.named, "rho", problems);
    if (m) {
      DensityMatrix rho(std::move(*m));
      try {
        rho.validate(s.tolerance);
        s.rho = std::move(rho);
      } catch (const std::exception& e) {
        problems.push_back(std::string("rho: ") + e.what());
      }
    }
  }

  if (const json* v = member(j, "monitor")) {
    if (!v->is_object()) {
      problems.push_back("monitor: expected an object");
    } else {
      check_keys(*v, "monitor", {"postselect"}, problems);
      if (const json* pv = member(*v, "postselect")) {
        auto k = resolve_ket(*pv, ps.named, "monitor.postselect", problems);
        if (k) {
          try {
            k->validate(s.tolerance);
            s.postselect = std::move(*k);
          } catch (const std::exception& e) {
            problems.push_back(std::string("monitor.postselect: ") + e.what());
          }
        }
      }
    }
  }

  if (const json* v = member(j, "spin")) {
    if (!v->is_object()) {
      problems.push_back("spin: expected an object");
    } else {
      check_keys(*v, "spin", {"direction"}, problems);
      const json* dv = member(*v, "direction");
      if (!dv || !dv->is_array() || dv->size() != 3) {
        problems.push_back("spin.direction: expected an array [x, y, z]");
      } else {
        double xyz[3] = {0, 0, 0};
        bool ok = true;
        for (std::size_t i = 0; i < 3; ++i) {
          auto d = want_number((*dv)[i], "spin.direction[" + std::to_string(i) + "]", problems);
          ok = ok && d.has_value();
          xyz[i] = d.value_or(0.0);
        }
        if (ok) {
          try {
            s.spin = SpinObservable::from_direction(xyz[0], xyz[1], xyz[2]);
          } catch (const std::exception& e) {
            problems.push_back(std::string("spin.direction: ") + e.what());
          }
        }
      }
    }
  }

  if (const json* v = member(j, "pointer")) {
    if (!v->is_object()) {
      problems.push_back("pointer: expected an object");
    } else {
      check_keys(*v, "pointer", {"t1", "t2", "lattice_dim", "offset"}, problems);
      PointerSpec spec;
      bool ok = true;
      if (const json* t = member(*v, "t1")) {
        auto u = want_uint(*t, "pointer.t1", problems);
        ok = ok && u.has_value();
        spec.t1 = static_cast<std::size_t>(u.value_or(0));
      } else {
        problems.push_back("pointer: missing required key \"t1\"");
        ok = false;
      }
      if (const json* t = member(*v, "t2")) {
        auto u = want_uint(*t, "pointer.t2", problems);
        ok = ok && u.has_value();
        spec.t2 = static_cast<std::size_t>(u.value_or(0));
      } else {
        problems.push_back("pointer: missing required key \"t2\"");
        ok = false;
      }
      if (const json* t = member(*v, "lattice_dim")) {
        auto u = want_uint(*t, "pointer.lattice_dim", problems);
        ok = ok && u.has_value();
        spec.lattice_dim = static_cast<std::size_t>(u.value_or(0));
      }
      if (const json* t = member(*v, "offset")) {
        if (t->is_number_integer())
          spec.offset = t->get<int>();
        else {
          problems.push_back("pointer.offset: expected an integer");
          ok = false;
        }
      }
      if (ok && spec.t1 >= spec.t2) {
        problems.push_back("pointer: t1 must be earlier than t2");
        ok = false;
      }
      if (ok) s.pointer = spec;
    }
  }

  if (const json* v = member(j, "sequential")) parse_sequential(*v, ps);
  if (const json* v = member(j, "lg")) parse_lg(*v, ps);

  if (const json* v = member(j, "energy")) {
    if (!v->is_object()) {
      problems.push_back("energy: expected an object");
    } else {
      check_keys(*v, "energy", {"hamiltonian", "allow_degenerate"}, problems);
      EnergySpec spec;
      const json* hv = member(*v, "hamiltonian");
      if (!hv) {
        problems.push_back("energy: missing required key \"hamiltonian\"");
      } else {
        auto m = resolve_matrix(*hv, ps.named, "energy.hamiltonian", problems);
        if (m) {
          if (!m->is_square() || !m->is_hermitian(s.tolerance)) {
            problems.push_back("energy.hamiltonian: must be a square Hermitian matrix");
          } else {
            spec.hamiltonian = std::move(*m);
            if (const json* av = member(*v, "allow_degenerate"))
              spec.allow_degenerate =
                  want_bool(*av, "energy.allow_degenerate", problems).value_or(false);
            s.energy = std::move(spec);
          }
        }
      }
    }
  }

  if (const json* v = member(j, "discrimination")) {
    if (!v->is_object()) {
      problems.push_back("discrimination: expected an object");
    } else {
      check_keys(*v, "discrimination", {"strategy", "resolution"}, problems);
      DiscriminationSpec spec;
      const json* sv = member(*v, "strategy");
      bool ok = true;
      if (!sv) {
        problems.push_back("discrimination: missing required key \"strategy\"");
        ok = false;
      } else {
        auto name = want_string(*sv, "discrimination.strategy", problems);
        if (!name) {
          ok = false;
        } else if (*name == "pretty_good") {
          spec.strategy = DiscriminationStrategy::kPrettyGood;
        } else if (*name == "brute_force_projective") {
          spec.strategy = DiscriminationStrategy::kBruteForceProjective;
        } else if (*name == "random_guess") {
          spec.strategy = DiscriminationStrategy::kRandomGuess;
        } else {
          problems.push_back("discrimination.strategy: unknown strategy \"" + *name +
                             "\" (expected pretty_good, brute_force_projective or random_guess)");
          ok = false;
        }
      }
      if (const json* rv = member(*v, "resolution")) {
        auto d = want_number(*rv, "discrimination.resolution", problems);
        if (d && (!(*d > 0.0) || !std::isfinite(*d))) {
          problems.push_back("discrimination.resolution: must be a positive finite number");
          ok = false;
        } else if (d) {
          spec.resolution = *d;
        }
      }
      if (ok) s.discrimination = spec;
    }
  }

  static const std::set<std::string> kKnownAnalyses = {
      "history", "monitor",     "channel", "pointer",
      "sequential", "lg", "uncertainty", "discrimination"};
  if (const json* v = member(j, "analyses")) {
    if (!v->is_array() || v->empty()) {
      problems.push_back("analyses: expected a non-empty array of analysis names");
    } else {
      for (std::size_t i = 0; i < v->size(); ++i) {
        auto name = want_string((*v)[i], "analyses[" + std::to_string(i) + "]", problems);
        if (!name) continue;
        if (!kKnownAnalyses.count(*name)) {
          problems.push_back("analyses[" + std::to_string(i) + "]: unknown analysis \"" + *name +
                             "\"");
          continue;
        }
        if (std::find(s.analyses.begin(), s.analyses.end(), *name) != s.analyses.end()) {
          problems.push_back("analyses: \"" + *name + "\" requested more than once");
          continue;
        }
        s.analyses.push_back(*name);
      }
    }
  } else {
    problems.push_back("missing required key \"analyses\"");
  }

  if (const json* v = member(j, "expect")) {
    if (!v->is_object()) {
      problems.push_back("expect: expected an object mapping report paths to numbers");
    } else {
      for (auto it = v->begin(); it != v->end(); ++it) {
        auto d = want_number(it.value(), "expect." + it.key(), problems);
        if (d) s.expectations.emplace_back(it.key(), *d);
      }
    }
  }

  // Per-analysis section requirements.
  auto requested = [&](const char* name) {
    return std::find(s.analyses.begin(), s.analyses.end(), name) != s.analyses.end();
  };
  auto require = [&](bool present, const char* analysis, const char* section) {
    if (!present)
      problems.push_back(std::string("analysis \"") + analysis + "\" needs the \"" + section +
                         "\" section");
  };
  if (requested("history") || requested("monitor") || requested("pointer") ||
      requested("sequential") || requested("uncertainty") || requested("discrimination")) {
    const char* which = requested("history")          ? "history"
                        : requested("monitor")        ? "monitor"
                        : requested("pointer")        ? "pointer"
                        : requested("sequential")     ? "sequential"
                        : requested("uncertainty")    ? "uncertainty"
                                                      : "discrimination";
    require(s.chain.has_value(), which, "chain");
    require(s.initial.has_value(), which, "initial");
  }
  if (requested("channel")) {
    require(s.channel.has_value() || s.choi.has_value(), "channel", "channel");
    require(s.rho.has_value(), "channel", "rho");
  }
  if (requested("pointer")) {
    require(s.spin.has_value(), "pointer", "spin");
    require(s.pointer.has_value(), "pointer", "pointer");
  }
  if (requested("sequential")) {
    require(s.sequential.has_value(), "sequential", "sequential");
    if (s.sequential && s.sequential->shots > 0 && !s.has_seed)
      problems.push_back("sequential: sampling (shots > 0) needs a top-level \"seed\"");
  }
  if (requested("lg")) require(s.lg.has_value(), "lg", "lg");
  if (requested("uncertainty")) require(s.energy.has_value(), "uncertainty", "energy");
  if (requested("discrimination"))
    require(s.discrimination.has_value(), "discrimination", "discrimination");

  // Cross-field dimension consistency, checked only when both sides parsed.
  if (s.chain && s.initial && s.initial->dim() != s.chain->dim())
    problems.push_back("initial has dimension " + std::to_string(s.initial->dim()) +
                       " but chain.steps[0] is " + std::to_string(s.chain->dim()) + "x" +
                       std::to_string(s.chain->dim()));
  if (s.rho && (s.channel || s.choi)) {
    const std::size_t in = s.channel ? s.channel->in_dim : s.choi->in_dim();
    if (s.rho->dim() != in)
      problems.push_back("rho has dimension " + std::to_string(s.rho->dim()) +
                         " but channel input dimension is " + std::to_string(in));
  }
  if (s.spin && s.chain && s.chain->dim() != 2)
    problems.push_back("spin analyses need a qubit chain; chain dimension is " +
                       std::to_string(s.chain->dim()));
  if (s.sequential && s.chain) {
    for (std::size_t idx : s.sequential->instants)
      if (idx >= s.chain->num_instants())
        problems.push_back("sequential.instants: index " + std::to_string(idx) +
                           " out of range for " + std::to_string(s.chain->num_instants()) +
                           " instants");
    for (std::size_t k = 0; k < s.sequential->observables.size(); ++k) {
      const ComplexMatrix& m = s.sequential->observables[k];
      if (m.rows() != s.chain->dim() || m.cols() != s.chain->dim())
        problems.push_back("sequential.observables[" + std::to_string(k) + "] is " + dim_str(m) +
                           " but chain.steps[0] is " + std::to_string(s.chain->dim()) + "x" +
                           std::to_string(s.chain->dim()));
    }
  }
  if (s.energy && s.chain && s.energy->hamiltonian.rows() != s.chain->dim())
    problems.push_back("energy.hamiltonian is " + dim_str(s.energy->hamiltonian) +
                       " but chain.steps[0] is " + std::to_string(s.chain->dim()) + "x" +
                       std::to_string(s.chain->dim()));
  if (s.pointer && s.chain) {
    if (s.pointer->t2 >= s.chain->num_instants())
      problems.push_back("pointer.t2: index " + std::to_string(s.pointer->t2) +
                         " out of range for " + std::to_string(s.chain->num_instants()) +
                         " instants");
  }
  if (s.postselect && s.chain && s.postselect->dim() != s.chain->dim())
    problems.push_back("monitor.postselect has dimension " + std::to_string(s.postselect->dim()) +
                       " but chain.steps[0] is " + std::to_string(s.chain->dim()) + "x" +
                       std::to_string(s.chain->dim()));

  if (!problems.empty()) throw ScenarioError(std::move(problems));
  return s;
}

Report run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  json body;
  body["schema_version"] = kReportSchemaVersion;
  body["library_version"] = kLibraryVersion;
  body["scenario"] = s.name;
  body["tolerance"] = s.tolerance;
  if (s.has_seed) body["seed"] = s.seed;

  json analyses = json::object();
  json errors = json::object();
  for (const std::string& name : s.analyses) {
    try {
      if (name == "history")
        analyses[name] = analysis_history(s);
      else if (name == "monitor")
        analyses[name] = analysis_monitor(s);
      else if (name == "channel")
        analyses[name] = analysis_channel(s);
      else if (name == "pointer")
        analyses[name] = analysis_pointer(s);
      else if (name == "sequential")
        analyses[name] = analysis_sequential(s);
      else if (name == "lg")
        analyses[name] = analysis_lg(s);
      else if (name == "uncertainty")
        analyses[name] = analysis_uncertainty(s);
      else if (name == "discrimination")
        analyses[name] = analysis_discrimination(s);
    } catch (const std::exception& e) {
      errors[name] = e.what();
    }
  }
  body["analyses"] = std::move(analyses);
  body["errors"] = errors;

  bool pass = errors.empty();
  json rows = json::array();
  for (const auto& [path, expected] : s.expectations) {
    json row;
    row["path"] = path;
    row["expected"] = expected;
    const json* node = walk_path(body["analyses"], path);
    bool row_pass = false;
    if (node == nullptr) {
      row["error"] = "path not found in report";
    } else if (node->is_number()) {
      const double actual = node->get<double>();
      row["actual"] = actual;
      row_pass = std::abs(actual - expected) <= s.tolerance;
    } else if (node->is_boolean()) {
      const double actual = node->get<bool>() ? 1.0 : 0.0;
      row["actual"] = actual;
      row_pass = std::abs(actual - expected) <= s.tolerance;
    } else {
      row["error"] = "path does not name a number";
    }
    row["pass"] = row_pass;
    pass = pass && row_pass;
    rows.push_back(std::move(row));
  }
  body["expectations"] = std::move(rows);
  body["pass"] = pass;

  const auto elapsed = std::chrono::steady_clock::now() - start;
  body["duration_ms"] =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed).count();
  return Report{std::move(body), pass};
}

std::string lg_rows_to_csv(const std::vector<LgRow>& rows) {
  std::string out = "theta,c12,c23,c13,k,violated\n";
  char buf[160];
  for (const LgRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%d\n", r.theta, r.c12, r.c23,
                  r.c13, r.k, r.violated ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace histlab
