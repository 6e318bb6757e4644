// Copyright 2026 The cpl Authors
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

#ifndef CPL_JSON_IO_H
#define CPL_JSON_IO_H

#include <nlohmann/json.hpp>
#include <string>

#include "cpl/dense.h"

namespace cpl {

using Json = nlohmann::json;

/// Complex numbers are [re, im] pairs.
Json complex_to_json(cplx z);
cplx complex_from_json(const Json &j);
/// Row-major nested arrays of [re, im] pairs.
Json matrix_to_json(const Mat &m);
Mat matrix_from_json(const Json &j);
/// Parses text, mapping parse errors to DomainError.
Json parse_json(const std::string &text);
Json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace cpl

#endif
