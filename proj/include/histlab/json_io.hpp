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

#ifndef HISTLAB_JSON_IO_HPP
#define HISTLAB_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "histlab/states.hpp"

namespace histlab {

// Matrices travel as {"rows": r, "cols": c, "re": [...], "im": [...]} with
// row-major entry order; state vectors are the cols == 1 special case.

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& context);

nlohmann::json ket_to_json(const Ket& k);
Ket ket_from_json(const nlohmann::json& j, const std::string& context);

// Reads and parses a JSON file; errors mention the path.
nlohmann::json read_json_file(const std::string& path);

// 2-space indent, sorted keys (nlohmann object order), trailing newline.
// Identical json values always serialize to identical bytes.
void write_json_file(const std::string& path, const nlohmann::json& j);
std::string dump_json(const nlohmann::json& j);

}  // namespace histlab

#endif  // HISTLAB_JSON_IO_HPP
