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

#include "cpl/qca.h"

#include "cpl/errors.h"

namespace cpl {

namespace {

void check_ring(int n) {
    if (n < 4 || n % 2 != 0) {
        throw DomainError("ring size must be even and at least 4, got " + std::to_string(n));
    }
}

}  // namespace

QcaStep::QcaStep(int n) : n_(n), forward_(1), backward_(1) {
    check_ring(n);
    forward_ = Tableau::cz_ring(n).then(Tableau::hadamard_all(n));
    backward_ = forward_.inverse();
}

RingPauli QcaStep::conjugate(const RingPauli &p) const {
    if ((int)p.size() != n_) {
        throw ShapeError("ring Pauli size does not match QCA ring size");
    }
    return forward_.conjugate(p);
}

RingPauli QcaStep::conjugate_inverse(const RingPauli &p) const {
    if ((int)p.size() != n_) {
        throw ShapeError("ring Pauli size does not match QCA ring size");
    }
    return backward_.conjugate(p);
}

RingPauli QcaStep::conjugate_power(const RingPauli &p, int steps) const {
    RingPauli r = p;
    for (int s = 0; s < steps; s++) {
        r = conjugate(r);
    }
    for (int s = 0; s < -steps; s++) {
        r = conjugate_inverse(r);
    }
    return r;
}

Tableau QcaStep::component(const BitVector &ring_bits) const {
    return Tableau::from_pauli(z_config(n_, ring_bits)).then(forward_);
}

RingPauli z_config(int n, const BitVector &ring_bits) {
    if ((int)ring_bits.size() != n) {
        throw ShapeError("ring configuration length does not match ring size");
    }
    return RingPauli(BitVector(n), ring_bits);
}

RingPauli qca_conjugate(const QcaStep &step, const RingPauli &p) {
    return step.conjugate(p);
}

int qca_period(int n) {
    check_ring(n);
    if (n > 64) {
        throw DomainError("ring size above 64 is not supported");
    }
    QcaStep step(n);
    Tableau power = step.forward();
    for (int p = 1; p <= 8 * n; p++) {
        if (power.is_symplectic_identity()) {
            return p;
        }
        power = power.then(step.forward());
    }
    throw InternalError("QCA period not found within 8n steps");
}

std::vector<int> qca_period_phases(int n) {
    int p = qca_period(n);
    QcaStep step(n);
    Tableau power(n);
    for (int k = 0; k < p; k++) {
        power = power.then(step.forward());
    }
    std::vector<int> out;
    for (int k = 0; k < n; k++) {
        out.push_back(power.x_image(k).hermitian_sign_exponent());
    }
    for (int k = 0; k < n; k++) {
        out.push_back(power.z_image(k).hermitian_sign_exponent());
    }
    return out;
}

BlockConfig::BlockConfig(int n) : n(n), rings(n, BitVector(n)) {
}

RingPauli advance_frame(const QcaStep &step, const RingPauli &frame, const BitVector &ring_bits) {
    return step.conjugate(z_config(step.n(), ring_bits) * frame);
}

RingPauli block_byproduct(const QcaStep &step, const BlockConfig &cfg) {
    if (cfg.n != step.n() || (int)cfg.rings.size() != step.n()) {
        throw ShapeError("block configuration shape does not match QCA ring size");
    }
    RingPauli acc(step.n());
    for (const BitVector &ring : cfg.rings) {
        acc = advance_frame(step, acc, ring);
    }
    return acc;
}

std::vector<RingPauli> qca_evolve(const QcaStep &step, const RingPauli &p, int steps) {
    if (steps < 0) {
        throw DomainError("step count must be non-negative");
    }
    std::vector<RingPauli> out{p};
    for (int s = 0; s < steps; s++) {
        out.push_back(step.conjugate(out.back()));
    }
    return out;
}

}  // namespace cpl
