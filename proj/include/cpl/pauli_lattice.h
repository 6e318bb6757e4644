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

#ifndef CPL_PAULI_LATTICE_H
#define CPL_PAULI_LATTICE_H

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cpl/bit_vector.h"

namespace cpl {

struct Site {
    int x;
    int y;
    auto operator<=>(const Site &) const = default;
};

/// Square lattice on a torus of circumferences nN (x direction) and n (y direction).
class TorusLattice {
   public:
    TorusLattice(int n, int N);

    int n() const {
        return n_;
    }
    int N() const {
        return N_;
    }
    int long_size() const {
        return n_ * N_;
    }
    size_t num_sites() const {
        return (size_t)n_ * n_ * N_;
    }
    /// Wraps both coordinates and returns k = x*n + y.
    size_t index(int x, int y) const;
    size_t index(Site s) const {
        return index(s.x, s.y);
    }
    Site site(size_t k) const;
    Site wrap(int x, int y) const;
    /// Sublattice label (x + y) mod 2.
    int parity(Site s) const;
    bool operator==(const TorusLattice &) const = default;

   private:
    int n_;
    int N_;
};

/// i^r X^x Z^z on a fixed number of qubits.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(size_t num_qubits);
    PauliOperator(BitVector xs, BitVector zs, uint8_t phase_exponent = 0);

    static PauliOperator identity(size_t num_qubits) {
        return PauliOperator(num_qubits);
    }
    static PauliOperator single(size_t num_qubits, size_t k, char pauli);
    static PauliOperator x_on(size_t num_qubits, const std::vector<size_t> &sites);
    static PauliOperator z_on(size_t num_qubits, const std::vector<size_t> &sites);
    /// Parses "+XYZ_", "-iXX", "ZIZ". 'I' and '_' are identity.
    static PauliOperator from_str(std::string_view text);

    size_t size() const {
        return xs_.size();
    }
    bool x(size_t k) const {
        return xs_.get(k);
    }
    bool z(size_t k) const {
        return zs_.get(k);
    }
    void set_x(size_t k, bool v) {
        xs_.set(k, v);
    }
    void set_z(size_t k, bool v) {
        zs_.set(k, v);
    }
    const BitVector &xs() const {
        return xs_;
    }
    const BitVector &zs() const {
        return zs_;
    }
    /// Exponent r of the i^r prefactor.
    uint8_t phase_exponent() const {
        return r_;
    }
    void set_phase_exponent(uint8_t r) {
        r_ = r & 3;
    }
    std::complex<double> phase() const;
    /// Sign exponent s of the Hermitian form i^s * (tensor product of I, X, Y, Z).
    uint8_t hermitian_sign_exponent() const;

    size_t weight() const;
    bool has_no_support() const {
        return xs_.none() && zs_.none();
    }
    bool is_x_type() const {
        return zs_.none();
    }
    bool is_z_type() const {
        return xs_.none();
    }
    /// Equality of the X and Z parts, ignoring the phase.
    bool same_support_as(const PauliOperator &other) const {
        return xs_ == other.xs_ && zs_ == other.zs_;
    }

    PauliOperator &operator*=(const PauliOperator &rhs);
    PauliOperator operator*(const PauliOperator &rhs) const;
    PauliOperator inverse() const;
    bool operator==(const PauliOperator &) const = default;

    std::string str() const;

   private:
    BitVector xs_;
    BitVector zs_;
    uint8_t r_ = 0;
};

/// Product P*Q.
PauliOperator multiply(const PauliOperator &p, const PauliOperator &q);
/// +1 if P and Q commute, -1 otherwise.
int commutes(const PauliOperator &p, const PauliOperator &q);

enum class DiagonalSign { Plus, Minus };

struct SymmetryElement {
    int c;
    DiagonalSign sign;
    PauliOperator op;
};

/// X on the diagonal {(x, (c +- x) mod n)}.
SymmetryElement make_symmetry(const TorusLattice &lattice, int c, DiagonalSign sign);
std::vector<SymmetryElement> all_symmetries(const TorusLattice &lattice);
/// Z on the four neighbors of (x, y).
PauliOperator star(const TorusLattice &lattice, int x, int y);
/// True iff p commutes with every stripe symmetry.
bool is_symmetric(const TorusLattice &lattice, const PauliOperator &p);

}  // namespace cpl

#endif
