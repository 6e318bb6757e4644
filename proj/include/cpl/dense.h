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

#ifndef CPL_DENSE_H
#define CPL_DENSE_H

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cpl/pauli_lattice.h"

namespace cpl {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Matrix of a Pauli operator. Basis index bit k is qubit k.
Mat pauli_matrix(const PauliOperator &p);
/// P v for a Pauli on at most 30 qubits; basis index bit k is qubit k.
Vec apply_pauli(const PauliOperator &p, const Vec &v);
/// exp(i beta P) for a Hermitian Pauli P.
Mat exp_i_pauli(double beta, const PauliOperator &p);
Mat hadamard_all_matrix(int n);
/// Hadamard on every qubit applied to a state vector (fast Walsh-Hadamard transform).
Vec hadamard_all_apply(const Vec &v);
Mat cz_ring_matrix(int n);
Mat kron(const Mat &a, const Mat &b);

/// Rescales so that the largest-modulus entry of b matches a in phase, then returns ||a - b|| / ||a||.
double distance_up_to_phase(const Mat &a, const Mat &b);

/// Principal square root of a Hermitian positive semidefinite matrix.
Mat sqrt_psd(const Mat &m);
/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const Mat &rho, const Mat &sigma);
double trace_norm(const Mat &m);
double trace_distance(const Mat &a, const Mat &b);

/// Traces out every qubit of an n-qubit matrix except those in `keep` (listed in output order).
Mat partial_trace_qubits(const Mat &rho, int n, const std::vector<int> &keep);

}  // namespace cpl

#endif
