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

#ifndef CPL_TENSORS_H
#define CPL_TENSORS_H

#include <string>
#include <vector>

#include "cpl/dense.h"
#include "cpl/qca.h"

namespace cpl {

/// Leg positions of a 5-leg PEPS tensor, as qubit indices of its 32-entry vector.
enum Leg { LEG_P = 0, LEG_N = 1, LEG_S = 2, LEG_E = 3, LEG_W = 4 };

/// Dense tensor with legs (phys, N, S, E, W), each of dimension 2.
/// Entry index has bit k set when leg k carries value 1.
struct Peps5Tensor {
    Vec data;

    cplx at(int p, int n, int s, int e, int w) const {
        return data(p | n << 1 | s << 2 | e << 3 | w << 4);
    }
    /// Applies a 5-qubit Pauli leg-wise.
    Peps5Tensor apply(const PauliOperator &op) const;
    /// Contraction of the physical leg with the X-basis bra of outcome a (0 is +, 1 is -).
    /// Result is a 16-entry vector over (N, S, E, W) at bits 0..3.
    Vec x_component(int a) const;
};

/// A^s_{NSEW} = [N=s][W=s] (-1)^{s(S+E)}.
Peps5Tensor cluster_peps_tensor();
/// The four translation-type symmetries fixed as the normative set.
std::vector<PauliOperator> cluster_tensor_symmetries();
/// The extra symmetry that singles out the cluster tensor.
PauliOperator cluster_tensor_extra_symmetry();

/// Ring of n X-projected site components contracted along S(y)-N(y+1).
/// Row index is the E-leg configuration, column index the W-leg configuration.
Mat contract_ring(const std::vector<Vec> &site_components);
/// Ring of the cluster tensor for X-basis outcomes `config` (bit y is row y).
Mat cluster_ring_matrix(int n, uint64_t config);
/// Dense H L Z(i).
Mat clifford_component_matrix(int n, uint64_t config);

/// Physical state of an Lx-by-Ly torus of cluster tensors in the computational basis.
/// Column x holds sites x*Ly .. x*Ly+Ly-1; the S leg of row y meets the N leg of row y+1,
/// the E leg of column x meets the W leg of column x+1.
Vec contract_cluster_torus(int lx, int ly);

struct JunkSpec {
    std::string family = "xx-diagonal";
    double theta = 0.0;
    int n = 4;
};

struct RingTensor {
    int n = 0;
    int junk_dim = 1;
    JunkSpec spec;
    /// B(i) for config i (bit y is row y).
    std::vector<Mat> junk;
    double residual = 0.0;

    Tableau algebraic(uint64_t config) const;
    /// C(i) (x) B(i) with the logical index major.
    Mat dense_component(uint64_t config) const;
};

/// Junk matrices of the xx-diagonal family in the outcome-record gauge, junk dimension 2^n.
std::vector<Mat> xx_diagonal_record_junk(int n, double theta);

/// Ring tensors of exp(i theta sum X_a X_b)|C>, product over pairs (x,y)-(x+1,y+-1).
RingTensor build_perturbed_ring_tensors(int n, const JunkSpec &spec);

/// Dense ring tensor components of the same family, built entry by entry from the site
/// tensors and the gate phases. Intended for n = 4.
std::vector<Mat> dense_perturbed_ring_tensor(int n, double theta);

struct Factorization {
    std::vector<Mat> junk;
    int junk_dim;
    double residual;
};

/// Splits A(i) = C(i) (x) B(i) with B(i) = Tr_L[(C(i)^dagger (x) I) A(i)] / 2^n.
/// Throws FactorizationFailed when the residual exceeds tol.
Factorization factor_ring_tensor(const std::vector<Mat> &components, int n, double tol = 1e-8);

struct DerivedTransition {
    /// 2n constraints on (E legs 0..n-1, W legs n..2n-1).
    std::vector<PauliOperator> constraints;
    /// Operator from W to E, normalized to be unitary.
    Mat op;
    /// Conjugation action of op on ring Paulis.
    Tableau clifford;
};

/// Patches the site-component symmetries around a ring, solves the resulting stabilizer
/// conditions for the ring operator, and reads off its Clifford action.
DerivedTransition derive_transition_from_symmetries(int n, uint64_t config);

}  // namespace cpl

#endif
