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

#include "cpl/cli.h"

#include <cstdlib>
#include <sstream>

#include "cpl/json_io.h"
#include "gtest/gtest.h"

using namespace cpl;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string demo_circuit() {
    return std::string(CPL_TEST_DATA_DIR) + "/../tools/circuits/demo.json";
}

}  // namespace

TEST(cli, usage_errors_exit_2) {
    EXPECT_EQ(invoke({}).code, EXIT_USAGE);
    EXPECT_EQ(invoke({"frobnicate"}).code, EXIT_USAGE);
    EXPECT_EQ(invoke({"verify", "qca", "--n", "5"}).code, EXIT_USAGE);
    EXPECT_EQ(invoke({"verify", "qca", "--n", "four"}).code, EXIT_USAGE);
    EXPECT_EQ(invoke({"verify", "nonsense", "--n", "4"}).code, EXIT_USAGE);
    EXPECT_EQ(invoke({"calibrate", "--family", "unknown"}).code, EXIT_USAGE);
    EXPECT_EQ(invoke({"run", "/nonexistent/circuit.json"}).code, EXIT_USAGE);
    EXPECT_EQ(invoke({"reduce-z", "--n", "6"}).code, EXIT_USAGE);
}

TEST(cli, help_exits_0) {
    EXPECT_EQ(invoke({"--help"}).code, EXIT_OK);
}

TEST(cli, verify_suites_pass) {
    for (std::string suite : {"symmetries", "stars", "qca", "tensors"}) {
        auto r = invoke({"verify", suite, "--n", "4", "--samples", "20"});
        EXPECT_EQ(r.code, EXIT_OK) << suite << "\n" << r.out << r.err;
        EXPECT_TRUE(parse_json(r.out).at("pass").get<bool>()) << suite;
    }
}

TEST(cli, reduce_z_exit_codes) {
    EXPECT_EQ(invoke({"reduce-z", "--n", "6", "--sites", "1,1"}).code, EXIT_CHECK_FAILED);
    EXPECT_EQ(invoke({"reduce-z", "--n", "6", "--sites", "0,0;3,3"}).code, EXIT_CHECK_FAILED);
    auto r = invoke({"reduce-z", "--n", "6", "--random", "--seed", "11"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    EXPECT_TRUE(parse_json(r.out).at("verified").get<bool>());
}

TEST(cli, qca_evolve_returns_after_n_steps) {
    auto r = invoke({"qca-evolve", "--n", "6", "--pauli", "_X_Z__"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    std::vector<std::string> lines;
    std::istringstream ss(r.out);
    for (std::string line; std::getline(ss, line);) {
        lines.push_back(line);
    }
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines.front(), "IXIZII");
    EXPECT_EQ(lines.back(), lines.front());
}

TEST(cli, calibrate_zero_theta_row) {
    auto r = invoke({"calibrate", "--theta", "0"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    EXPECT_EQ(r.out, "theta,nu_abs,nu_arg,xi,lambda1,junk_dim,status\n0,0.5,0,0,0,1,ok\n");
}

TEST(cli, calibrate_grid_ignores_thread_cap) {
    setenv("CPL_THREADS", "1", 1);
    auto serial = invoke({"calibrate", "--theta-max", "0.2", "--theta-step", "0.1"});
    setenv("CPL_THREADS", "4", 1);
    auto parallel = invoke({"calibrate", "--theta-max", "0.2", "--theta-step", "0.1"});
    unsetenv("CPL_THREADS");
    ASSERT_EQ(serial.code, EXIT_OK);
    EXPECT_EQ(serial.out, parallel.out);
}

TEST(cli, thread_cap_respects_env) {
    setenv("CPL_THREADS", "1", 1);
    EXPECT_EQ(thread_cap(), 1);
    unsetenv("CPL_THREADS");
    EXPECT_GE(thread_cap(), 1);
}

TEST(cli, deterministic_run_is_byte_identical) {
    std::vector<std::string> args{"run", demo_circuit(), "--theta", "0", "--seed", "5", "--deterministic"};
    auto a = invoke(args);
    auto b = invoke(args);
    ASSERT_EQ(a.code, EXIT_OK) << a.err;
    EXPECT_EQ(a.out, b.out);
    Json j = parse_json(a.out);
    EXPECT_GT(j.at("fidelity").get<double>(), 1 - 1e-6);
    EXPECT_FALSE(j.at("stats").contains("wall_seconds"));
}

TEST(cli, run_infeasible_exits_3) {
    auto r = invoke({"run", demo_circuit(), "--theta", "0.1", "--tol", "0.001"});
    EXPECT_EQ(r.code, EXIT_INFEASIBLE) << r.err;
}

TEST(cli, run_min_fidelity_gate) {
    auto r = invoke({"run", demo_circuit(), "--theta", "0", "--min-fidelity", "1.5", "--deterministic"});
    EXPECT_EQ(r.code, EXIT_CHECK_FAILED);
}
