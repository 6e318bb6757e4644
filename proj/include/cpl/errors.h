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

#ifndef CPL_ERRORS_H
#define CPL_ERRORS_H

#include <stdexcept>
#include <string>

namespace cpl {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotSymmetric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotLocal : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FactorizationFailed : std::runtime_error {
    double residual;
    FactorizationFailed(const std::string &msg, double residual) : std::runtime_error(msg), residual(residual) {
    }
};

struct NotInjective : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedGenerator : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CompilationInfeasible : std::runtime_error {
    double floor;
    CompilationInfeasible(const std::string &msg, double floor) : std::runtime_error(msg), floor(floor) {
    }
};

/// Raised when an internal consistency check fails. Indicates a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace cpl

#endif
