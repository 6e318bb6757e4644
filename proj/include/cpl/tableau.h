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

#ifndef CPL_TABLEAU_H
#define CPL_TABLEAU_H

#include <optional>
#include <vector>

#include "cpl/pauli_lattice.h"

namespace cpl {

/// A Clifford operation stored by its conjugation action on X_k and Z_k.
class Tableau {
   public:
    explicit Tableau(size_t num_qubits);

    static Tableau from_pauli(const PauliOperator &p);
    static Tableau hadamard_all(size_t num_qubits);
    /// Controlled-Z on the ring edges (k, k+1 mod n).
    static Tableau cz_ring(size_t num_qubits);

    size_t num_qubits() const {
        return x_images_.size();
    }
    const PauliOperator &x_image(size_t k) const {
        return x_images_[k];
    }
    const PauliOperator &z_image(size_t k) const {
        return z_images_[k];
    }
    void set_x_image(size_t k, PauliOperator p) {
        x_images_[k] = std::move(p);
    }
    void set_z_image(size_t k, PauliOperator p) {
        z_images_[k] = std::move(p);
    }

    /// U P U^dagger.
    PauliOperator conjugate(const PauliOperator &p) const;
    /// The operation "this, then second", i.e. second * this.
    Tableau then(const Tableau &second) const;
    Tableau inverse() const;

    /// Every generator maps to itself up to sign.
    bool is_symplectic_identity() const;
    /// If the operation is a Pauli (up to global phase), that Pauli with phase +1.
    std::optional<PauliOperator> as_pauli() const;

    bool operator==(const Tableau &) const = default;

   private:
    std::vector<PauliOperator> x_images_;
    std::vector<PauliOperator> z_images_;
};

}  // namespace cpl

#endif
