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

// Scenario-driven front end.  Exit codes: 0 success, 1 expectation or
// analysis failure, 2 input error (bad flags, unreadable or invalid
// scenario, unknown check name).

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "histlab/checks.hpp"
#include "histlab/json_io.hpp"
#include "histlab/scenario.hpp"
#include "histlab/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct CommonOpts {
  std::string scenario;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tolerance = 0.0;
  bool tolerance_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool scenario_required) {
  auto* opt = cmd->add_option("--scenario", c.scenario, "Scenario JSON file");
  if (scenario_required) opt->required();
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
  cmd->add_option("--seed", c.seed, "Override the scenario seed")
      ->each([&c](const std::string&) { c.seed_set = true; });
  cmd->add_option("--tolerance", c.tolerance, "Override the scenario tolerance")
      ->each([&c](const std::string&) { c.tolerance_set = true; });
}

// Applies CLI overrides and (optionally) narrows the scenario to a single
// analysis, keeping only the expectations that target it.
void apply_overrides(json& raw, const CommonOpts& c, const std::string& focus) {
  if (!raw.is_object()) return;  // parse_scenario_json reports this properly
  if (c.seed_set) raw["seed"] = c.seed;
  if (c.tolerance_set) raw["tolerance"] = c.tolerance;
  if (focus.empty()) return;
  raw["analyses"] = json::array({focus});
  if (raw.contains("expect") && raw["expect"].is_object()) {
    json kept = json::object();
    for (auto it = raw["expect"].begin(); it != raw["expect"].end(); ++it)
      if (it.key().rfind(focus + ".", 0) == 0) kept[it.key()] = it.value();
    raw["expect"] = std::move(kept);
  }
}

int emit_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return kExitInput;
  }
  f << text;
  return kExitOk;
}

void print_report_failures(const json& body) {
  if (body.contains("errors"))
    for (auto it = body["errors"].begin(); it != body["errors"].end(); ++it)
      std::cerr << "analysis \"" << it.key() << "\" failed: " << it.value().get<std::string>()
                << "\n";
  if (body.contains("expectations"))
    for (const json& row : body["expectations"])
      if (!row["pass"].get<bool>()) std::cerr << "expectation failed: " << row.dump() << "\n";
}

// Shared body of every report-emitting subcommand.  `focus` empty means run
// every analysis the scenario requests.
int run_scenario_command(const CommonOpts& c, const std::string& focus) {
  json raw;
  try {
    raw = histlab::read_json_file(c.scenario);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  apply_overrides(raw, c, focus);
  histlab::Scenario s;
  try {
    s = histlab::parse_scenario_json(raw, c.scenario);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  const histlab::Report report = histlab::run_scenario(s);
  const int rc = emit_text(c.out, histlab::dump_json(report.body));
  if (rc != kExitOk) return rc;
  if (!report.pass) {
    print_report_failures(report.body);
    return kExitFail;
  }
  return kExitOk;
}

struct LgFlags {
  double theta_min = 0.0;
  bool theta_min_set = false;
  double theta_max = 0.0;
  bool theta_max_set = false;
  std::uint64_t steps = 0;
  bool steps_set = false;
};

int run_lg_sweep(const CommonOpts& c, const LgFlags& f) {
  json raw;
  if (c.scenario.empty()) {
    raw = json::object();
    raw["name"] = "lg-sweep";
    raw["analyses"] = json::array({"lg"});
  } else {
    try {
      raw = histlab::read_json_file(c.scenario);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kExitInput;
    }
  }
  if (raw.is_object()) {
    if (!raw.contains("lg") || !raw["lg"].is_object()) raw["lg"] = json::object();
    if (f.theta_min_set) raw["lg"]["theta_min"] = f.theta_min;
    if (f.theta_max_set) raw["lg"]["theta_max"] = f.theta_max;
    if (f.steps_set) raw["lg"]["steps"] = f.steps;
  }
  apply_overrides(raw, c, "lg");
  histlab::Scenario s;
  try {
    s = histlab::parse_scenario_json(raw, c.scenario.empty() ? "<flags>" : c.scenario);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
  const histlab::Report report = histlab::run_scenario(s);
  if (!report.body["errors"].empty()) {
    print_report_failures(report.body);
    return kExitFail;
  }
  std::vector<histlab::LgRow> rows;
  for (const json& jr : report.body["analyses"]["lg"]["rows"]) {
    histlab::LgRow r;
    r.theta = jr["theta"].get<double>();
    r.c12 = jr["c12"].get<double>();
    r.c23 = jr["c23"].get<double>();
    r.c13 = jr["c13"].get<double>();
    r.k = jr["k"].get<double>();
    r.violated = jr["violated"].get<bool>();
    rows.push_back(r);
  }
  const int rc = emit_text(c.out, histlab::lg_rows_to_csv(rows));
  if (rc != kExitOk) return rc;
  if (!report.pass) {
    print_report_failures(report.body);
    return kExitFail;
  }
  return kExitOk;
}

int run_reproduce(const std::string& out_path, const std::string& only, bool list_only) {
  const std::vector<std::string>& names = histlab::check_names();
  if (list_only) {
    for (const auto& n : names) std::cout << n << "\n";
    return kExitOk;
  }
  std::vector<std::string> todo;
  if (only.empty()) {
    todo = names;
  } else if (std::find(names.begin(), names.end(), only) != names.end()) {
    todo.push_back(only);
  } else {
    std::cerr << "unknown check \"" << only << "\"; available checks:\n";
    for (const auto& n : names) std::cerr << "  " << n << "\n";
    return kExitInput;
  }

  // Checks run concurrently up to the hardware worker count; results land in
  // preassigned slots so the bundle order matches check_names() regardless of
  // completion order.
  std::vector<histlab::CheckResult> results(todo.size());
  std::atomic<std::size_t> cursor{0};
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), todo.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= todo.size()) return;
        try {
          results[i] = histlab::run_check(todo[i]);
        } catch (const std::exception& e) {
          results[i].name = todo[i];
          results[i].pass = false;
          results[i].details = json{{"error", e.what()}};
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  bool all_pass = true;
  double total_ms = 0.0;
  json checks = json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    total_ms += r.duration_ms;
    std::fprintf(stderr, "[%s] %s (%.1f ms)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                 r.duration_ms);
    json jc;
    jc["name"] = r.name;
    jc["pass"] = r.pass;
    jc["duration_ms"] = r.duration_ms;
    jc["details"] = r.details;
    checks.push_back(std::move(jc));
  }
  json bundle;
  bundle["schema_version"] = histlab::kReportSchemaVersion;
  bundle["library_version"] = histlab::kLibraryVersion;
  bundle["checks"] = std::move(checks);
  bundle["total_duration_ms"] = total_ms;
  bundle["pass"] = all_pass;
  const int rc = emit_text(out_path, histlab::dump_json(bundle));
  if (rc != kExitOk) return rc;
  return all_pass ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"histlab: entangled-history simulations driven by scenario files"};
  app.require_subcommand(1);

  CommonOpts common;
  LgFlags lg_flags;
  std::string focus;  // which single analysis the parsed leaf runs
  bool lg_mode = false;

  auto add_leaf = [&](CLI::App* parent, const char* name, const char* help,
                      const char* analysis) {
    CLI::App* leaf = parent->add_subcommand(name, help);
    add_common(leaf, common, true);
    leaf->callback([&focus, analysis]() { focus = analysis; });
    return leaf;
  };

  CLI::App* history = app.add_subcommand("history", "History-state operations");
  history->require_subcommand(1);
  add_leaf(history, "build", "Build a history state and its instant marginals", "history");

  CLI::App* monitor = app.add_subcommand("monitor", "Monitor-system protocol");
  monitor->require_subcommand(1);
  add_leaf(monitor, "run", "Run the monitor protocol against the history state", "monitor");

  CLI::App* channel = app.add_subcommand("channel", "Channel histories");
  channel->require_subcommand(1);
  add_leaf(channel, "history", "Build the two-instant channel history operator", "channel");

  CLI::App* pointer = app.add_subcommand("pointer", "Two-time pointer measurement");
  pointer->require_subcommand(1);
  add_leaf(pointer, "run", "Compute the pointer displacement distribution", "pointer");

  CLI::App* lg = app.add_subcommand("lg", "Leggett-Garg correlators");
  lg->require_subcommand(1);
  CLI::App* lg_sweep = lg->add_subcommand("sweep", "Sweep K(theta) and emit CSV");
  add_common(lg_sweep, common, false);
  lg_sweep->add_option("--theta-min", lg_flags.theta_min, "Sweep start angle (radians)")
      ->each([&lg_flags](const std::string&) { lg_flags.theta_min_set = true; });
  lg_sweep->add_option("--theta-max", lg_flags.theta_max, "Sweep end angle (radians)")
      ->each([&lg_flags](const std::string&) { lg_flags.theta_max_set = true; });
  lg_sweep->add_option("--steps", lg_flags.steps, "Number of grid points")
      ->each([&lg_flags](const std::string&) { lg_flags.steps_set = true; });
  lg_sweep->callback([&lg_mode]() { lg_mode = true; });

  CLI::App* uncertainty = app.add_subcommand("uncertainty", "Energy-time uncertainty");
  uncertainty->require_subcommand(1);
  add_leaf(uncertainty, "report", "Energy spread vs instant distinguishability", "uncertainty");

  CLI::App* run = app.add_subcommand("run", "Run every analysis a scenario requests");
  add_common(run, common, true);

  CLI::App* repro = app.add_subcommand("reproduce-paper", "Run the bundled reproduction checks");
  std::string only;
  std::string repro_out;
  bool list_only = false;
  repro->add_option("--only", only, "Run a single named check");
  repro->add_option("--out", repro_out, "Write the bundle report to this file");
  repro->add_flag("--list", list_only, "List check names without running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (repro->parsed()) return run_reproduce(repro_out, only, list_only);
    if (lg_mode) return run_lg_sweep(common, lg_flags);
    if (run->parsed()) return run_scenario_command(common, "");
    return run_scenario_command(common, focus);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
}
