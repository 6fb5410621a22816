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

#ifndef HISTLAB_TESTS_TEST_SUPPORT_HPP
#define HISTLAB_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "histlab/complex_matrix.hpp"
#include "histlab/states.hpp"

namespace histlab::testing {

// Fixed seed for every seeded property test in the suite.
inline constexpr std::uint64_t kTestSeed = 0x74657374u;

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return 1e99;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double ket_diff(const Ket& a, const Ket& b) { return max_abs_diff(a.amplitudes, b.amplitudes); }

// Distance up to a global phase: 1 - |<a|b>| for unit vectors.
inline double phase_free_diff(const Ket& a, const Ket& b) {
  return std::abs(1.0 - std::abs(inner(a, b)));
}

}  // namespace histlab::testing

#endif  // HISTLAB_TESTS_TEST_SUPPORT_HPP
