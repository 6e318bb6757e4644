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

#ifndef CPL_QCA_H
#define CPL_QCA_H

#include <vector>

#include "cpl/tableau.h"

namespace cpl {

/// Pauli operator on the n positions of a virtual ring; position arithmetic is mod n.
using RingPauli = PauliOperator;

/// One step C(0) = H L of the cluster-phase automaton, with H the Hadamard on every
/// ring qubit and L the controlled-Z product over ring edges.
class QcaStep {
   public:
    explicit QcaStep(int n);

    int n() const {
        return n_;
    }
    const Tableau &forward() const {
        return forward_;
    }
    const Tableau &backward() const {
        return backward_;
    }
    /// C(0) P C(0)^dagger.
    RingPauli conjugate(const RingPauli &p) const;
    /// C(0)^dagger P C(0).
    RingPauli conjugate_inverse(const RingPauli &p) const;
    /// p conjugated `steps` times forward (negative: backward).
    RingPauli conjugate_power(const RingPauli &p, int steps) const;
    /// Tableau of C(i) = C(0) Z(i).
    Tableau component(const BitVector &ring_bits) const;

   private:
    int n_;
    Tableau forward_;
    Tableau backward_;
};

/// Z(i) on a ring.
RingPauli z_config(int n, const BitVector &ring_bits);

RingPauli qca_conjugate(const QcaStep &step, const RingPauli &p);

/// Smallest p >= 1 with C(0)^p acting as the identity on the symplectic part.
int qca_period(int n);

/// Hermitian sign exponents of C(0)^n applied to X_0..X_{n-1}, Z_0..Z_{n-1}.
std::vector<int> qca_period_phases(int n);

/// n rings of n bits each, ring t measured t-th within the block.
struct BlockConfig {
    int n;
    std::vector<BitVector> rings;

    explicit BlockConfig(int n);
    void set(int ring, int pos, bool v) {
        rings[ring].set(pos, v);
    }
};

/// Pauli P with C(i_{n-1}) ... C(i_0) = P C(0)^n.
RingPauli block_byproduct(const QcaStep &step, const BlockConfig &cfg);

/// The frame update F -> C(0) Z(i) F C(0)^dagger for one ring.
RingPauli advance_frame(const QcaStep &step, const RingPauli &frame, const BitVector &ring_bits);

/// Pauli strings of the forward evolution of p, one per step, steps+1 entries.
std::vector<RingPauli> qca_evolve(const QcaStep &step, const RingPauli &p, int steps);

}  // namespace cpl

#endif
