# Copyright 2026 The cpl Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import json

import numpy as np
import pytest

import cpl


def test_qca_period():
    for n in (4, 6, 8):
        assert cpl.qca_period(n) == n


def test_qca_evolve_returns_to_start():
    rows = cpl.qca_evolve(6, "Z_____", 6)
    assert len(rows) == 7
    assert rows[0] == rows[-1]


def test_reduce_to_stars_rejects_single_z():
    with pytest.raises(cpl.NotSymmetric):
        cpl.reduce_to_stars(6, 1, [(1, 1)])


def test_reduce_to_stars_rejects_half_torus_pair():
    with pytest.raises(cpl.NotLocal):
        cpl.reduce_to_stars(6, 1, [(0, 0), (3, 3)])


def test_calibrate_trivial_junk():
    c = cpl.calibrate(4, 0.0)
    assert c["junk_dim"] == 1
    assert abs(c["nu_abs"] - 0.5) < 1e-12


def test_calibrate_closed_form():
    c = cpl.calibrate(4, 0.1)
    assert abs(c["nu_abs"] - 0.5 * np.cos(0.2) ** 4) < 1e-9


def test_run_circuit_at_trivial_junk():
    circuit = {"n_logical": 1, "gates": [{"type": "rz", "q": 0, "beta": 0.4}]}
    r = cpl.run_circuit(json.dumps(circuit))
    assert r["fidelity"] > 1 - 1e-6
    assert r["logical_state"].shape == (2, 2)


def test_run_circuit_infeasible():
    circuit = {"n_logical": 1, "gates": [{"type": "rz", "q": 0, "beta": 0.4}]}
    with pytest.raises(cpl.CompilationInfeasible):
        cpl.run_circuit(json.dumps(circuit), theta=0.1, dalpha=0.08, tol=1e-5)


def test_cli_exit_codes():
    code, out, _ = cpl.run_cli(["qca-period", "--n", "6"])
    assert code == 0
    assert json.loads(out)["period"] == 6
    code, _, _ = cpl.run_cli(["verify", "qca", "--n", "5"])
    assert code == 2
