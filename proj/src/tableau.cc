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

#include "cpl/tableau.h"

#include "cpl/errors.h"

namespace cpl {

Tableau::Tableau(size_t num_qubits) {
    for (size_t k = 0; k < num_qubits; k++) {
        x_images_.push_back(PauliOperator::single(num_qubits, k, 'X'));
        z_images_.push_back(PauliOperator::single(num_qubits, k, 'Z'));
    }
}

Tableau Tableau::from_pauli(const PauliOperator &p) {
    Tableau t(p.size());
    for (size_t k = 0; k < p.size(); k++) {
        if (p.z(k)) {
            t.x_images_[k].set_phase_exponent(2);
        }
        if (p.x(k)) {
            t.z_images_[k].set_phase_exponent(2);
        }
    }
    return t;
}

Tableau Tableau::hadamard_all(size_t num_qubits) {
    Tableau t(num_qubits);
    std::swap(t.x_images_, t.z_images_);
    return t;
}

Tableau Tableau::cz_ring(size_t num_qubits) {
    if (num_qubits < 3) {
        throw DomainError("ring controlled-Z needs at least 3 qubits");
    }
    Tableau t(num_qubits);
    for (size_t k = 0; k < num_qubits; k++) {
        size_t left = (k + num_qubits - 1) % num_qubits;
        size_t right = (k + 1) % num_qubits;
        t.x_images_[k].set_z(left, true);
        t.x_images_[k].set_z(right, true);
    }
    return t;
}

PauliOperator Tableau::conjugate(const PauliOperator &p) const {
    if (p.size() != num_qubits()) {
        throw ShapeError("Pauli size does not match tableau size");
    }
    PauliOperator out(num_qubits());
    out.set_phase_exponent(p.phase_exponent());
    for (size_t k : p.xs().ones()) {
        out *= x_images_[k];
    }
    for (size_t k : p.zs().ones()) {
        out *= z_images_[k];
    }
    return out;
}

Tableau Tableau::then(const Tableau &second) const {
    if (second.num_qubits() != num_qubits()) {
        throw ShapeError("tableau sizes differ");
    }
    Tableau r(num_qubits());
    for (size_t k = 0; k < num_qubits(); k++) {
        r.x_images_[k] = second.conjugate(x_images_[k]);
        r.z_images_[k] = second.conjugate(z_images_[k]);
    }
    return r;
}

Tableau Tableau::inverse() const {
    size_t n = num_qubits();
    Tableau r(n);
    for (size_t k = 0; k < 2 * n; k++) {
        const PauliOperator g = k < n ? PauliOperator::single(n, k, 'X') : PauliOperator::single(n, k - n, 'Z');
        // Expand g in the forward images; coefficients come from symplectic products with the dual images.
        PauliOperator pre(n);
        PauliOperator acc(n);
        for (size_t j = 0; j < n; j++) {
            if (commutes(g, z_images_[j]) < 0) {
                pre *= PauliOperator::single(n, j, 'X');
                acc *= x_images_[j];
            }
        }
        for (size_t j = 0; j < n; j++) {
            if (commutes(g, x_images_[j]) < 0) {
                pre *= PauliOperator::single(n, j, 'Z');
                acc *= z_images_[j];
            }
        }
        if (!acc.same_support_as(g)) {
            throw InternalError("tableau is not symplectic");
        }
        // U pre U^dagger = acc, acc = i^s g  =>  U^dagger g U = i^{-s} pre.
        uint8_t s = (uint8_t)((acc.phase_exponent() + 4 - g.phase_exponent()) & 3);
        pre.set_phase_exponent((uint8_t)((pre.phase_exponent() + 4 - s) & 3));
        if (k < n) {
            r.x_images_[k] = pre;
        } else {
            r.z_images_[k - n] = pre;
        }
    }
    return r;
}

bool Tableau::is_symplectic_identity() const {
    size_t n = num_qubits();
    for (size_t k = 0; k < n; k++) {
        if (!x_images_[k].same_support_as(PauliOperator::single(n, k, 'X')) ||
            !z_images_[k].same_support_as(PauliOperator::single(n, k, 'Z'))) {
            return false;
        }
    }
    return true;
}

std::optional<PauliOperator> Tableau::as_pauli() const {
    if (!is_symplectic_identity()) {
        return std::nullopt;
    }
    size_t n = num_qubits();
    PauliOperator q(n);
    for (size_t k = 0; k < n; k++) {
        uint8_t rx = x_images_[k].phase_exponent();
        uint8_t rz = z_images_[k].phase_exponent();
        if ((rx & 1) || (rz & 1)) {
            return std::nullopt;
        }
        q.set_z(k, rx == 2);
        q.set_x(k, rz == 2);
    }
    q.set_phase_exponent((uint8_t)((q.xs() & q.zs()).popcount() & 3));
    return q;
}

}  // namespace cpl
