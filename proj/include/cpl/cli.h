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

#ifndef CPL_CLI_H
#define CPL_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace cpl {

enum ExitCode { EXIT_OK = 0, EXIT_CHECK_FAILED = 1, EXIT_USAGE = 2, EXIT_INFEASIBLE = 3 };

/// Options shared by the subcommands.
struct RunConfig {
    int n = -1;
    int N = 1;
    std::string family = "xx-diagonal";
    double theta = 0.0;
    double dalpha = 0.02;
    int wire = -1;
    uint64_t seed = 0;
    double tol = 0.01;
    std::string out;
    bool deterministic = false;
};

/// Worker cap from CPL_THREADS, else the hardware concurrency.
int thread_cap();

/// Runs one command; `args` excludes the program name. Returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace cpl

#endif
