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

#include "cpl/compiler.h"

#include <chrono>
#include <cmath>
#include <numbers>

#include "cpl/errors.h"

namespace cpl {

namespace {

const char *gate_name(GateType t) {
    switch (t) {
        case GateType::Init:
            return "init";
        case GateType::RZ:
            return "rz";
        case GateType::RX:
            return "rx";
        case GateType::RZZ:
            return "rzz";
        case GateType::MeasZ:
            return "measz";
    }
    return "";
}

GateType gate_from_name(const std::string &s) {
    if (s == "init") {
        return GateType::Init;
    }
    if (s == "rz") {
        return GateType::RZ;
    }
    if (s == "rx") {
        return GateType::RX;
    }
    if (s == "rzz") {
        return GateType::RZZ;
    }
    if (s == "measz") {
        return GateType::MeasZ;
    }
    throw DomainError("unknown gate type '" + s + "'");
}

const char *step_name(StepKind k) {
    switch (k) {
        case StepKind::Init:
            return "init";
        case StepKind::Prepare:
            return "prepare";
        case StepKind::Gate:
            return "gate";
        case StepKind::Measure:
            return "measure";
        case StepKind::Readout:
            return "readout";
    }
    return "";
}

StepKind step_from_name(const std::string &s) {
    for (StepKind k : {StepKind::Init, StepKind::Prepare, StepKind::Gate, StepKind::Measure, StepKind::Readout}) {
        if (s == step_name(k)) {
            return k;
        }
    }
    throw DomainError("unknown step kind '" + s + "'");
}

const char *basis_name(BasisKind k) {
    switch (k) {
        case BasisKind::SymX:
            return "symx";
        case BasisKind::Tilted:
            return "tilted";
        case BasisKind::Hadamard01:
            return "hadamard01";
    }
    return "";
}

BasisKind basis_from_name(const std::string &s) {
    for (BasisKind k : {BasisKind::SymX, BasisKind::Tilted, BasisKind::Hadamard01}) {
        if (s == basis_name(k)) {
            return k;
        }
    }
    throw DomainError("unknown basis '" + s + "'");
}

Json pattern_to_json(const MeasurementPattern &p) {
    Json sites = Json::array();
    for (auto [m, l] : p.specials()) {
        const SiteBasis &b = p.at(m, l);
        Json s = {{"m", m}, {"l", l}, {"basis", basis_name(b.kind)}};
        if (b.kind == BasisKind::Tilted) {
            s["dalpha"] = b.dalpha;
            s["delta"] = b.delta;
        }
        sites.push_back(s);
    }
    return sites;
}

MeasurementPattern pattern_from_json(int n, const Json &sites) {
    MeasurementPattern p(n);
    for (const Json &s : sites) {
        SiteBasis b;
        b.kind = basis_from_name(s.at("basis").get<std::string>());
        if (b.kind == BasisKind::Tilted) {
            b.dalpha = s.at("dalpha").get<double>();
            b.delta = s.at("delta").get<double>();
        }
        p.at(s.at("m").get<int>(), s.at("l").get<int>()) = b;
    }
    p.validate();
    return p;
}

}  // namespace

LogicalCircuit LogicalCircuit::from_json(const Json &j) {
    LogicalCircuit c;
    try {
        c.n_logical = j.at("n_logical").get<int>();
        for (const Json &g : j.at("gates")) {
            Gate gate;
            gate.type = gate_from_name(g.at("type").get<std::string>());
            if (gate.type != GateType::Init) {
                gate.q = g.at("q").get<int>();
            }
            if (gate.type == GateType::RZ || gate.type == GateType::RX || gate.type == GateType::RZZ) {
                gate.beta = g.at("beta").get<double>();
            }
            c.gates.push_back(gate);
        }
    } catch (const Json::exception &e) {
        throw DomainError(std::string("malformed circuit: ") + e.what());
    }
    c.validate();
    return c;
}

Json LogicalCircuit::to_json() const {
    Json gs = Json::array();
    for (const Gate &g : gates) {
        Json o = {{"type", gate_name(g.type)}};
        if (g.type != GateType::Init) {
            o["q"] = g.q;
        }
        if (g.type == GateType::RZ || g.type == GateType::RX || g.type == GateType::RZZ) {
            o["beta"] = g.beta;
        }
        gs.push_back(o);
    }
    return {{"n_logical", n_logical}, {"gates", gs}};
}

void LogicalCircuit::validate() const {
    if (n_logical < 1) {
        throw DomainError("circuit needs at least one qubit");
    }
    for (size_t i = 0; i < gates.size(); i++) {
        const Gate &g = gates[i];
        if (g.type == GateType::Init) {
            if (i != 0) {
                throw DomainError("INIT may only open the circuit");
            }
            continue;
        }
        if (g.q < 0 || g.q >= n_logical) {
            throw DomainError("qubit index out of range");
        }
        if (g.type == GateType::RZZ && g.q + 1 >= n_logical) {
            throw DomainError("RZZ partner qubit out of range");
        }
        if (!std::isfinite(g.beta)) {
            throw DomainError("gate angle is not finite");
        }
    }
}

ResourceParams ResourceParams::from_calibration(int n, const ResourceCalibration &c) {
    ResourceParams r;
    r.n = n;
    r.nu = c.nu;
    r.xi = c.xi;
    r.lambda1 = c.lambda1;
    r.junk_dim = c.junk_dim;
    r.slice_error_coeff = c.slice_error_coeff;
    return r;
}

int CompiledProgram::total_slices() const {
    int s = 0;
    for (const ProgramStep &st : steps) {
        if (st.kind == StepKind::Prepare || st.kind == StepKind::Gate) {
            s += st.repetitions;
        }
    }
    return s;
}

Json CompiledProgram::to_json() const {
    Json st = Json::array();
    for (const ProgramStep &s : steps) {
        st.push_back({{"kind", step_name(s.kind)},
                      {"repetitions", s.repetitions},
                      {"sign_row", s.sign_row},
                      {"frame_correct", s.frame_correct},
                      {"gate", s.gate},
                      {"angle", s.angle},
                      {"sites", pattern_to_json(s.pattern)}});
    }
    return {{"n", n},
            {"n_logical", n_logical},
            {"epsilon", epsilon},
            {"dalpha", dalpha},
            {"wire_blocks", wire_blocks},
            {"readout_reps", readout_reps},
            {"delta", delta},
            {"nu_abs", nu_abs},
            {"error_floor", error_floor},
            {"frame_adaptive", frame_adaptive},
            {"total_slices", total_slices()},
            {"circuit", circuit.to_json()},
            {"steps", st}};
}

CompiledProgram CompiledProgram::from_json(const Json &j) {
    CompiledProgram p;
    try {
        p.n = j.at("n").get<int>();
        p.n_logical = j.at("n_logical").get<int>();
        p.epsilon = j.at("epsilon").get<double>();
        p.dalpha = j.at("dalpha").get<double>();
        p.wire_blocks = j.at("wire_blocks").get<int>();
        p.readout_reps = j.at("readout_reps").get<int>();
        p.delta = j.at("delta").get<double>();
        p.nu_abs = j.at("nu_abs").get<double>();
        p.error_floor = j.at("error_floor").get<double>();
        p.frame_adaptive = j.at("frame_adaptive").get<bool>();
        p.circuit = LogicalCircuit::from_json(j.at("circuit"));
        for (const Json &s : j.at("steps")) {
            ProgramStep st;
            st.kind = step_from_name(s.at("kind").get<std::string>());
            st.repetitions = s.at("repetitions").get<int>();
            st.sign_row = s.at("sign_row").get<int>();
            st.frame_correct = s.at("frame_correct").get<bool>();
            st.gate = s.at("gate").get<int>();
            st.angle = s.at("angle").get<double>();
            st.pattern = pattern_from_json(p.n, s.at("sites"));
            p.steps.push_back(std::move(st));
        }
    } catch (const Json::exception &e) {
        throw DomainError(std::string("malformed program: ") + e.what());
    }
    return p;
}

CompiledProgram compile(const LogicalCircuit &circ, double epsilon, const ResourceParams &res,
                        const CompileOptions &opts) {
    circ.validate();
    if (!(epsilon > 1e-6 && epsilon < 0.5)) {
        throw DomainError("epsilon must lie in (1e-6, 0.5)");
    }
    if (res.n < 4 || res.n % 2) {
        throw DomainError("ring size must be even and at least 4");
    }
    if (2 * circ.n_logical > res.n) {
        throw ShapeError("circuit needs more logical qubits than the ring carries");
    }
    double nu_abs = std::abs(res.nu);
    if (!(nu_abs > 0)) {
        throw PreconditionError("resource has vanishing nu");
    }
    if (!(opts.dalpha > 0 && opts.dalpha <= 0.1)) {
        throw DomainError("dalpha must lie in (0, 0.1]");
    }
    int n = res.n;
    CompiledProgram p;
    p.n = n;
    p.n_logical = circ.n_logical;
    p.epsilon = epsilon;
    p.dalpha = opts.dalpha;
    p.wire_blocks = opts.wire_blocks >= 0 ? opts.wire_blocks : std::max(2, (int)std::ceil(10 * res.xi));
    p.readout_reps = opts.readout_reps >= 1 ? opts.readout_reps : (res.junk_dim == 1 ? 1 : 50);
    p.delta = calibrated_delta(res.nu);
    p.nu_abs = nu_abs;
    p.circuit = circ;

    auto add_rotation = [&](StepKind kind, int m, int l, double angle, int sign_row, int gate) {
        double per = 2 * nu_abs * opts.dalpha;
        int k = (int)std::ceil(std::abs(angle) / per - 1e-9);
        if (k == 0) {
            return;
        }
        double da = angle / (2 * nu_abs * k);
        ProgramStep st;
        st.kind = kind;
        st.pattern = MeasurementPattern::tilted(n, m, l, da, p.delta);
        st.repetitions = k;
        st.sign_row = sign_row;
        st.gate = gate;
        st.angle = angle;
        p.error_floor += k * res.slice_error_coeff * da * da / 2;
        p.steps.push_back(std::move(st));
    };
    auto add_measure = [&](StepKind kind, int row, int gate) {
        ProgramStep st;
        st.kind = kind;
        st.pattern = MeasurementPattern::hadamard01(n, 1, row);
        st.repetitions = p.readout_reps;
        st.gate = gate;
        p.steps.push_back(std::move(st));
    };

    ProgramStep init;
    init.kind = StepKind::Init;
    init.repetitions = p.readout_reps;
    if (opts.init == InitMode::MeasureX) {
        init.pattern = MeasurementPattern::x_init(n);
        init.frame_correct = opts.prepare_plus;
    } else {
        init.pattern = MeasurementPattern::z_init(n);
    }
    p.steps.push_back(init);
    if (opts.prepare_plus && opts.init == InitMode::MeasureZRotate) {
        for (int l = 0; l < n; l++) {
            // |m> -> exp(i (-1)^m pi/4 X) -> |+i>, then exp(i pi/4 Z) -> |+>.
            add_rotation(StepKind::Prepare, n, l, std::numbers::pi / 4, l, -1);
            add_rotation(StepKind::Prepare, 1, l, std::numbers::pi / 4, -1, -1);
        }
    }
    for (size_t i = 0; i < circ.gates.size(); i++) {
        const Gate &g = circ.gates[i];
        switch (g.type) {
            case GateType::Init:
                break;
            case GateType::RZ:
                add_rotation(StepKind::Gate, 1, 2 * g.q, g.beta, -1, (int)i);
                break;
            case GateType::RX:
                add_rotation(StepKind::Gate, n, 2 * g.q, g.beta, -1, (int)i);
                break;
            case GateType::RZZ:
                add_rotation(StepKind::Gate, 2, 2 * g.q + 1, g.beta, -1, (int)i);
                break;
            case GateType::MeasZ:
                add_measure(StepKind::Measure, 2 * g.q, (int)i);
                break;
        }
    }
    if (opts.readout) {
        for (int q = 0; q < circ.n_logical; q++) {
            add_measure(StepKind::Readout, 2 * q, -1);
        }
    }
    if (p.error_floor > epsilon) {
        throw CompilationInfeasible("second-order slicing error exceeds epsilon at this dalpha", p.error_floor);
    }
    return p;
}

ExecuteResult execute(const CompiledProgram &prog, const BlockChannel &ch, uint64_t seed, Backend backend) {
    auto t0 = std::chrono::steady_clock::now();
    if (ch.n() != prog.n) {
        throw ShapeError("program and resource ring sizes differ");
    }
    int n = prog.n;
    const FixedPoint &fp = ch.spectral();
    size_t L = size_t{1} << n;
    VirtualState state = VirtualState::product(Mat::Identity(L, L) / (double)L, fp.rho_fix);
    Rng rng(seed);
    ExecuteResult res;
    res.stats.nu = compute_nu(ch, 0);
    res.stats.xi = fp.xi;
    res.stats.lambda1 = fp.lambda1;
    res.stats.junk_dim = ch.junk_dim();
    std::vector<int> init_outcome(n, 0);
    bool captured = false;
    Mat before_readout;

    auto wire = [&]() {
        if (backend == Backend::Channel) {
            state = oblivious_wire(ch, std::move(state), prog.wire_blocks);
        } else {
            for (int b = 0; b < prog.wire_blocks; b++) {
                apply_pattern(ch, state, MeasurementPattern::wire(n), rng, prog.frame_adaptive);
            }
        }
        res.stats.blocks += prog.wire_blocks;
    };
    auto run = [&](const MeasurementPattern &pat, bool selective) {
        res.stats.blocks += 1;
        if (backend == Backend::Channel) {
            return apply_pattern_channel(ch, state, pat, rng, selective);
        }
        return apply_pattern(ch, state, pat, rng, prog.frame_adaptive);
    };
    // Majority over repetitions; ties go to the last outcome.
    auto vote = [&](const ProgramStep &st, std::vector<int> &rows) {
        auto sp = st.pattern.specials();
        std::vector<int> ones(sp.size(), 0);
        std::vector<int> last(sp.size(), 0);
        for (int r = 0; r < st.repetitions; r++) {
            PatternOutcome o = run(st.pattern, true);
            for (size_t s = 0; s < sp.size(); s++) {
                ones[s] += o.logical_z[s];
                last[s] = o.logical_z[s];
            }
            wire();
        }
        for (size_t s = 0; s < sp.size(); s++) {
            int twice = 2 * ones[s];
            rows[s] = twice > st.repetitions ? 1 : twice < st.repetitions ? 0 : last[s];
        }
    };

    for (const ProgramStep &st : prog.steps) {
        switch (st.kind) {
            case StepKind::Init: {
                auto sp = st.pattern.specials();
                std::vector<int> rows(sp.size());
                vote(st, rows);
                for (size_t s = 0; s < sp.size(); s++) {
                    init_outcome[sp[s].second] = rows[s];
                    if (st.frame_correct && rows[s]) {
                        shift_into_frame(state, tilt_partner(n, sp[s].first, sp[s].second));
                    }
                }
                break;
            }
            case StepKind::Prepare:
            case StepKind::Gate: {
                MeasurementPattern pat = st.pattern;
                if (st.sign_row >= 0 && init_outcome[st.sign_row]) {
                    for (auto [m, l] : pat.specials()) {
                        pat.at(m, l).dalpha = -pat.at(m, l).dalpha;
                    }
                }
                for (int r = 0; r < st.repetitions; r++) {
                    run(pat, false);
                    wire();
                }
                res.stats.slices += st.repetitions;
                break;
            }
            case StepKind::Measure:
                for (int r = 0; r < st.repetitions; r++) {
                    run(st.pattern, false);
                    wire();
                }
                break;
            case StepKind::Readout: {
                if (!captured) {
                    before_readout = state.logical();
                    captured = true;
                }
                std::vector<int> rows(1);
                vote(st, rows);
                res.stats.readout.push_back(rows[0]);
                break;
            }
        }
    }
    if (!captured) {
        before_readout = state.logical();
    }
    std::vector<int> keep;
    for (int q = 0; q < prog.n_logical; q++) {
        keep.push_back(2 * q);
    }
    res.logical = partial_trace_qubits(before_readout, n, keep);
    for (int q = 0; q < prog.n_logical; q++) {
        double p0 = 0;
        for (Eigen::Index b = 0; b < res.logical.rows(); b++) {
            if (!((b >> q) & 1)) {
                p0 += res.logical(b, b).real();
            }
        }
        res.stats.readout_p0.push_back(p0);
    }
    res.stats.init_outcomes = init_outcome;
    res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

ExecuteResult execute(const CompiledProgram &prog, const RingTensor &rt, uint64_t seed, Backend backend) {
    return execute(prog, BlockChannel::from_ring_tensor(rt), seed, backend);
}

Mat oracle_simulate(const LogicalCircuit &circ) {
    circ.validate();
    int k = circ.n_logical;
    if (k > 6) {
        throw DomainError("oracle is limited to 6 logical qubits");
    }
    size_t dim = size_t{1} << k;
    Vec plus = Vec::Constant(dim, 1.0 / std::sqrt((double)dim));
    Mat rho = plus * plus.adjoint();
    for (const Gate &g : circ.gates) {
        PauliOperator p(k);
        switch (g.type) {
            case GateType::Init:
                continue;
            case GateType::RZ:
                p = PauliOperator::single(k, g.q, 'Z');
                break;
            case GateType::RX:
                p = PauliOperator::single(k, g.q, 'X');
                break;
            case GateType::RZZ:
                p = PauliOperator::z_on(k, {(size_t)g.q, (size_t)g.q + 1});
                break;
            case GateType::MeasZ: {
                Mat z = pauli_matrix(PauliOperator::single(k, g.q, 'Z'));
                rho = 0.5 * (rho + z * rho * z);
                continue;
            }
        }
        Mat u = exp_i_pauli(g.beta, p);
        rho = u * rho * u.adjoint();
    }
    return rho;
}

}  // namespace cpl
