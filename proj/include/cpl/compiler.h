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

#ifndef CPL_COMPILER_H
#define CPL_COMPILER_H

#include <string>
#include <vector>

#include "cpl/json_io.h"
#include "cpl/mbqc_engine.h"

namespace cpl {

enum class GateType { Init, RZ, RX, RZZ, MeasZ };

/// RZ(b) = exp(i b Z_q), RX(b) = exp(i b X_q), RZZ(b) = exp(i b Z_q Z_{q+1}).
struct Gate {
    GateType type = GateType::RZ;
    int q = 0;
    double beta = 0;
};

struct LogicalCircuit {
    int n_logical = 1;
    std::vector<Gate> gates;

    /// {"n_logical": k, "gates": [{"type": "rz"|"rx"|"rzz"|"measz"|"init", "q": q, "beta": b}]}
    static LogicalCircuit from_json(const Json &j);
    Json to_json() const;
    /// Qubit indices in range, RZZ partners in range, finite angles, INIT only first.
    void validate() const;
};

/// Resource constants measured once before compiling.
struct ResourceParams {
    int n = 4;
    cplx nu{0.5, 0.0};
    double xi = 0;
    double lambda1 = 0;
    int junk_dim = 1;
    double slice_error_coeff = 0;

    static ResourceParams from_calibration(int n, const ResourceCalibration &c);
};

enum class InitMode {
    /// Weak X measurement of every row; - outcomes are moved into the Pauli frame.
    MeasureX,
    /// Weak Z measurement of every row, then exp(i (-1)^m pi/4 X) and exp(i pi/4 Z) slices.
    MeasureZRotate,
};

struct CompileOptions {
    InitMode init = InitMode::MeasureX;
    double dalpha = 0.02;
    /// Wire blocks after each non-wire pattern; -1 selects max(2, ceil(10 xi)).
    int wire_blocks = -1;
    /// Weak-measurement repetitions for init, MEASZ and readout; -1 selects 1 for trivial junk, else 50.
    int readout_reps = -1;
    /// Bring every row to |+> after the initial measurement.
    bool prepare_plus = true;
    bool readout = true;
};

enum class StepKind { Init, Prepare, Gate, Measure, Readout };

struct ProgramStep {
    StepKind kind = StepKind::Gate;
    MeasurementPattern pattern{4};
    int repetitions = 1;
    /// Tilt sign is multiplied by (-1)^(init outcome of this row) when >= 0.
    int sign_row = -1;
    /// Init only: move the partner Pauli of rows with outcome 1 into the frame.
    bool frame_correct = false;
    /// Index into the circuit's gates, -1 for init, preparation and readout.
    int gate = -1;
    /// Logical rotation angle carried by all repetitions together.
    double angle = 0;
};

struct CompiledProgram {
    int n = 4;
    int n_logical = 1;
    double epsilon = 0;
    double dalpha = 0;
    int wire_blocks = 2;
    int readout_reps = 1;
    double delta = 0;
    double nu_abs = 0.5;
    /// Estimated accumulated second-order error.
    double error_floor = 0;
    /// Adaptivity: flip the tilt sign when the frame anticommutes with Z at the special site.
    bool frame_adaptive = true;
    std::vector<ProgramStep> steps;
    LogicalCircuit circuit;

    int total_slices() const;
    Json to_json() const;
    static CompiledProgram from_json(const Json &j);
};

CompiledProgram compile(const LogicalCircuit &circ, double epsilon, const ResourceParams &res,
                        const CompileOptions &opts = {});

struct ExecuteStats {
    cplx nu;
    double xi = 0;
    double lambda1 = 0;
    int junk_dim = 1;
    int slices = 0;
    long long blocks = 0;
    double wall_seconds = 0;
    std::vector<int> init_outcomes;
    std::vector<int> readout;
    /// Probability of Z = +1 per logical qubit in the returned state.
    std::vector<double> readout_p0;
};

struct ExecuteResult {
    /// State on the even rows (logical qubit q on row 2q), before readout.
    Mat logical;
    ExecuteStats stats;
};

enum class Backend { Channel, Trajectory };

ExecuteResult execute(const CompiledProgram &prog, const BlockChannel &ch, uint64_t seed,
                      Backend backend = Backend::Channel);
ExecuteResult execute(const CompiledProgram &prog, const RingTensor &rt, uint64_t seed,
                      Backend backend = Backend::Channel);

/// Dense simulation from |+>^k; MEASZ dephases.
Mat oracle_simulate(const LogicalCircuit &circ);

}  // namespace cpl

#endif
