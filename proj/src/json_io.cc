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

#include "cpl/json_io.h"

#include <fstream>
#include <sstream>

#include "cpl/errors.h"

namespace cpl {

Json complex_to_json(cplx z) {
    return Json::array({z.real(), z.imag()});
}

cplx complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        throw DomainError("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Mat &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw DomainError("matrix must be a non-empty array of rows");
    }
    Mat m(j.size(), j[0].size());
    for (size_t r = 0; r < j.size(); r++) {
        if (j[r].size() != j[0].size()) {
            throw ShapeError("ragged matrix rows");
        }
        for (size_t c = 0; c < j[r].size(); c++) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw DomainError(std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw DomainError("cannot write " + path);
    }
    out << text;
}

}  // namespace cpl
