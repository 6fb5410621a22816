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

#include "histlab/json_io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace histlab {
namespace {

bool nonneg_integer(const nlohmann::json& v) {
  if (v.is_number_unsigned()) return true;
  return v.is_number_integer() && v.get<std::int64_t>() >= 0;
}

std::vector<double> number_array(const nlohmann::json& j, const std::string& key,
                                 const std::string& context) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw std::invalid_argument(context + ": missing numeric array '" + key + "'");
  std::vector<double> out;
  out.reserve(j.at(key).size());
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw std::invalid_argument(context + ": '" + key + "' has a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  auto& re = j["re"] = nlohmann::json::array();
  auto& im = j["im"] = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& context) {
  if (!j.is_object()) throw std::invalid_argument(context + ": expected a matrix object");
  if (!j.contains("rows") || !j.contains("cols") || !nonneg_integer(j.at("rows")) ||
      !nonneg_integer(j.at("cols")))
    throw std::invalid_argument(context + ": matrix needs unsigned 'rows' and 'cols'");
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const auto re = number_array(j, "re", context);
  const auto im = number_array(j, "im", context);
  if (re.size() != rows * cols || im.size() != rows * cols)
    throw std::invalid_argument(context + ": 're'/'im' length must equal rows*cols");
  std::vector<Complex> entries(rows * cols);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = Complex{re[i], im[i]};
  return ComplexMatrix(rows, cols, std::move(entries));
}

nlohmann::json ket_to_json(const Ket& k) { return matrix_to_json(k.column()); }

Ket ket_from_json(const nlohmann::json& j, const std::string& context) {
  const ComplexMatrix m = matrix_from_json(j, context);
  if (m.cols() != 1) throw std::invalid_argument(context + ": state vector must have cols == 1");
  std::vector<Complex> amps(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) amps[r] = m(r, 0);
  return Ket(std::move(amps));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("invalid JSON in " + path + ": " + e.what());
  }
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << dump_json(j);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace histlab
