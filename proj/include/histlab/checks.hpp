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

#ifndef HISTLAB_CHECKS_HPP
#define HISTLAB_CHECKS_HPP

#include <string>
#include <vector>

#include "json.hpp"

namespace histlab {

// Self-contained reproduction checks, each tying a library guarantee to a
// quantitative assertion.  They back `histlab reproduce-paper` and the
// acceptance test binary.
struct CheckResult {
  std::string name;
  bool pass = false;
  double duration_ms = 0.0;
  nlohmann::json details;
};

// Stable execution order.
const std::vector<std::string>& check_names();

// Runs one check by name (throws std::invalid_argument for unknown names).
CheckResult run_check(const std::string& name);

std::vector<CheckResult> run_all_checks();

}  // namespace histlab

#endif  // HISTLAB_CHECKS_HPP
