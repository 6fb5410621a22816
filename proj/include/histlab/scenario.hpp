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

#ifndef HISTLAB_SCENARIO_HPP
#define HISTLAB_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "histlab/channels.hpp"
#include "histlab/history.hpp"
#include "histlab/tempcorr.hpp"
#include "histlab/uncertainty.hpp"

namespace histlab {

// Carries every schema violation found in a scenario file, not just the
// first; what() joins them one per line.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct PointerSpec {
  std::size_t t1 = 0;
  std::size_t t2 = 1;
  std::size_t lattice_dim = 5;
  int offset = 0;
};

struct SequentialSpec {
  std::vector<std::size_t> instants;
  std::vector<ComplexMatrix> observables;
  std::uint64_t shots = 0;
};

struct LgSpec {
  double theta_min = 0.0;
  double theta_max = 0.0;
  std::size_t steps = 0;  // number of grid points
  ComplexMatrix observable;
};

struct EnergySpec {
  ComplexMatrix hamiltonian;
  bool allow_degenerate = false;
};

struct DiscriminationSpec {
  DiscriminationStrategy strategy = DiscriminationStrategy::kPrettyGood;
  double resolution = 1e-3;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  bool has_seed = false;
  double tolerance = kDefaultTol;

  std::optional<InstantChain> chain;
  std::optional<Ket> initial;
  std::optional<KrausChannel> channel;
  std::optional<ChoiChannel> choi;  // set when the channel came as a Choi matrix
  std::optional<DensityMatrix> rho;
  std::optional<Ket> postselect;
  std::optional<SpinObservable> spin;
  std::optional<PointerSpec> pointer;
  std::optional<SequentialSpec> sequential;
  std::optional<LgSpec> lg;
  std::optional<EnergySpec> energy;
  std::optional<DiscriminationSpec> discrimination;

  std::vector<std::string> analyses;
  std::vector<std::pair<std::string, double>> expectations;  // dotted report path -> value
};

// Parses and fully validates a scenario file (schema, unknown keys,
// cross-field dimension consistency).  Throws ScenarioError with the full
// violation list, or std::runtime_error for unreadable files.
Scenario parse_scenario(const std::string& path);

// Same, from already-parsed JSON (context names the source in messages).
Scenario parse_scenario_json(const nlohmann::json& j, const std::string& context);

struct Report {
  nlohmann::json body;
  bool pass = false;
};

// Dispatches every requested analysis, collecting one result block or one
// structured error per analysis (a failing analysis never aborts siblings),
// then evaluates the declared expectations against the blocks.
Report run_scenario(const Scenario& s);

// CSV for a Leggett-Garg sweep: header plus one row per angle.
std::string lg_rows_to_csv(const std::vector<LgRow>& rows);

}  // namespace histlab

#endif  // HISTLAB_SCENARIO_HPP
