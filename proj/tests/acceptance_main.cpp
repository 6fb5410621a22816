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

// Acceptance gate: one binary running every release criterion at its stated
// tolerance, printing exactly one PASS/FAIL line per criterion.  Criteria 1-8
// reuse the in-process reproduction checks; criterion 9 spawns the installed
// CLI end to end.  Usage: acceptance <path-to-histlab-binary>.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "histlab/checks.hpp"
#include "histlab/json_io.hpp"

namespace {

struct Criterion {
  int number;
  std::string label;
  std::string check;      // reproduction check name; empty for the CLI run
  double budget_ms = 0.0; // 0 = no runtime bound
};

bool run_cli_criterion(const std::string& histlab, double budget_ms, double& elapsed_ms,
                       std::string& detail) {
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / "histlab_acceptance_bundle.json";
  const std::string cmd =
      "'" + histlab + "' reproduce-paper --out '" + out.string() + "' >/dev/null 2>&1";

  const auto start = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  elapsed_ms = std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start)
                   .count();

  if (status == -1 || !WIFEXITED(status)) {
    detail = "process did not exit normally";
    return false;
  }
  if (WEXITSTATUS(status) != 0) {
    detail = "exit status " + std::to_string(WEXITSTATUS(status));
    return false;
  }
  if (elapsed_ms >= budget_ms) {
    detail = "over the runtime budget";
    return false;
  }
  try {
    const auto bundle = histlab::read_json_file(out.string());
    if (!bundle.value("pass", false)) {
      detail = "bundle reports pass=false";
      return false;
    }
  } catch (const std::exception& e) {
    detail = e.what();
    return false;
  }
  std::filesystem::remove(out);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <path-to-histlab-binary>\n", argv[0]);
    return 2;
  }
  const std::string histlab = argv[1];

  const std::vector<Criterion> criteria = {
      {1, "GHZ-form histories", "ghz_form", 1000.0},
      {2, "monitor-history equivalence", "monitor_equivalence", 10000.0},
      {3, "pointer nullity", "pointer_nullity", 5000.0},
      {4, "repeated-spin correlation", "repeated_spin", 0.0},
      {5, "channel-history consistency", "channel_consistency", 0.0},
      {6, "energy-time extremes", "energy_time_extremes", 0.0},
      {7, "Helstrom oracle agreement", "helstrom_oracle", 0.0},
      {8, "Leggett-Garg bound", "lg_bound", 0.0},
      {9, "reproduce-paper CLI", "", 60000.0},
  };

  int passed = 0;
  for (const Criterion& c : criteria) {
    bool ok = false;
    double elapsed_ms = 0.0;
    std::string detail;
    if (c.check.empty()) {
      ok = run_cli_criterion(histlab, c.budget_ms, elapsed_ms, detail);
    } else {
      try {
        const histlab::CheckResult r = histlab::run_check(c.check);
        elapsed_ms = r.duration_ms;
        ok = r.pass;
        if (!ok) detail = r.details.dump();
        if (ok && c.budget_ms > 0.0 && elapsed_ms >= c.budget_ms) {
          ok = false;
          detail = "over the runtime budget";
        }
      } catch (const std::exception& e) {
        detail = e.what();
      }
    }
    passed += ok ? 1 : 0;
    std::printf("[%s] criterion %d: %s (%.1f ms)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.label.c_str(), elapsed_ms, detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
  }

  std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
