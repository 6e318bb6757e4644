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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cpl/cli.h"
#include "cpl/compiler.h"
#include "cpl/errors.h"
#include "cpl/json_io.h"
#include "cpl/qca.h"
#include "cpl/star_reduction.h"

namespace py = pybind11;
using namespace cpl;

namespace {

std::vector<std::string> evolve(int n, const std::string &pauli, int steps) {
    QcaStep step(n);
    std::vector<std::string> rows;
    for (const RingPauli &p : qca_evolve(step, PauliOperator::from_str(pauli), steps)) {
        rows.push_back(p.str());
    }
    return rows;
}

std::vector<std::pair<int, int>> reduce(int n, int N, const std::vector<std::pair<int, int>> &sites) {
    TorusLattice lat(n, N);
    std::vector<Site> s;
    for (auto [x, y] : sites) {
        s.push_back(lat.wrap(x, y));
    }
    StarDecomposition d = reduce_to_stars(ZSupport(lat, s));
    std::vector<std::pair<int, int>> out;
    for (Site c : d.centers) {
        out.emplace_back(c.x, c.y);
    }
    return out;
}

py::dict calibration(int n, double theta, const std::string &family) {
    ResourceCalibration c =
        calibrate(BlockChannel::from_ring_tensor(build_perturbed_ring_tensors(n, {family, theta, n})));
    py::dict d;
    d["nu"] = c.nu;
    d["nu_abs"] = c.nu_abs;
    d["nu_arg"] = c.nu_arg;
    d["delta"] = c.delta;
    d["xi"] = c.xi;
    d["lambda1"] = c.lambda1;
    d["junk_dim"] = c.junk_dim;
    d["slice_error_coeff"] = c.slice_error_coeff;
    return d;
}

py::dict run_circuit(const std::string &circuit_json, int n, double theta, double dalpha, double tol, uint64_t seed) {
    LogicalCircuit circ = LogicalCircuit::from_json(parse_json(circuit_json));
    BlockChannel ch = BlockChannel::from_ring_tensor(build_perturbed_ring_tensors(n, {"xx-diagonal", theta, n}));
    CompileOptions opts;
    opts.dalpha = dalpha;
    CompiledProgram prog = compile(circ, tol, ResourceParams::from_calibration(n, calibrate(ch)), opts);
    ExecuteResult r = execute(prog, ch, seed);
    Mat oracle = oracle_simulate(circ);
    py::dict d;
    d["fidelity"] = fidelity(r.logical, oracle);
    d["logical_state"] = r.logical;
    d["oracle_state"] = oracle;
    d["slices"] = prog.total_slices();
    d["error_floor"] = prog.error_floor;
    return d;
}

py::tuple cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cluster-phase MBQC toolkit";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NotSymmetric>(m, "NotSymmetric", PyExc_ValueError);
    py::register_exception<NotLocal>(m, "NotLocal", PyExc_ValueError);
    py::register_exception<CompilationInfeasible>(m, "CompilationInfeasible", PyExc_RuntimeError);

    m.def("qca_period", &qca_period, py::arg("n"));
    m.def("qca_evolve", &evolve, py::arg("n"), py::arg("pauli"), py::arg("steps"),
          "Ring Pauli strings after 0..steps automaton steps.");
    m.def("reduce_to_stars", &reduce, py::arg("n"), py::arg("N"), py::arg("sites"),
          "Star centers whose product is Z on the given sites.");
    m.def("calibrate", &calibration, py::arg("n"), py::arg("theta"), py::arg("family") = "xx-diagonal");
    m.def("run_circuit", &run_circuit, py::arg("circuit_json"), py::arg("n") = 4, py::arg("theta") = 0.0,
          py::arg("dalpha") = 0.02, py::arg("tol") = 0.01, py::arg("seed") = 1);
    m.def("run_cli", &cli, py::arg("args"), "Returns (exit_code, stdout, stderr).");
}
