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

#include "cpl/pauli_lattice.h"

#include <sstream>

#include "cpl/errors.h"

namespace cpl {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

void check_same_size(const PauliOperator &p, const PauliOperator &q) {
    if (p.size() != q.size()) {
        throw ShapeError("Pauli operators act on different numbers of qubits: " + std::to_string(p.size()) + " vs " +
                         std::to_string(q.size()));
    }
}

}  // namespace

TorusLattice::TorusLattice(int n, int N) : n_(n), N_(N) {
    if (n < 4 || n % 2 != 0) {
        throw DomainError("n must be even and at least 4, got " + std::to_string(n));
    }
    if (N < 1) {
        throw DomainError("N must be at least 1, got " + std::to_string(N));
    }
}

size_t TorusLattice::index(int x, int y) const {
    return (size_t)mod(x, long_size()) * n_ + mod(y, n_);
}

Site TorusLattice::site(size_t k) const {
    if (k >= num_sites()) {
        throw DomainError("site index out of range");
    }
    return {(int)(k / n_), (int)(k % n_)};
}

Site TorusLattice::wrap(int x, int y) const {
    return {mod(x, long_size()), mod(y, n_)};
}

int TorusLattice::parity(Site s) const {
    Site w = wrap(s.x, s.y);
    return (w.x + w.y) & 1;
}

PauliOperator::PauliOperator(size_t num_qubits) : xs_(num_qubits), zs_(num_qubits), r_(0) {
}

PauliOperator::PauliOperator(BitVector xs, BitVector zs, uint8_t phase_exponent)
    : xs_(std::move(xs)), zs_(std::move(zs)), r_(phase_exponent & 3) {
    if (xs_.size() != zs_.size()) {
        throw ShapeError("X and Z parts have different lengths");
    }
}

PauliOperator PauliOperator::single(size_t num_qubits, size_t k, char pauli) {
    PauliOperator p(num_qubits);
    if (k >= num_qubits) {
        throw DomainError("qubit index out of range");
    }
    switch (pauli) {
        case 'X':
            p.set_x(k, true);
            break;
        case 'Z':
            p.set_z(k, true);
            break;
        case 'Y':
            p.set_x(k, true);
            p.set_z(k, true);
            p.r_ = 1;
            break;
        case 'I':
            break;
        default:
            throw DomainError(std::string("unknown Pauli '") + pauli + "'");
    }
    return p;
}

PauliOperator PauliOperator::x_on(size_t num_qubits, const std::vector<size_t> &sites) {
    PauliOperator p(num_qubits);
    for (size_t k : sites) {
        p.xs_.flip(k);
    }
    return p;
}

PauliOperator PauliOperator::z_on(size_t num_qubits, const std::vector<size_t> &sites) {
    PauliOperator p(num_qubits);
    for (size_t k : sites) {
        p.zs_.flip(k);
    }
    return p;
}

PauliOperator PauliOperator::from_str(std::string_view text) {
    uint8_t s = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        s = text[0] == '-' ? 2 : 0;
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        s += 1;
        text.remove_prefix(1);
    }
    PauliOperator p(text.size());
    size_t num_y = 0;
    for (size_t k = 0; k < text.size(); k++) {
        switch (text[k]) {
            case 'X':
                p.set_x(k, true);
                break;
            case 'Z':
                p.set_z(k, true);
                break;
            case 'Y':
                p.set_x(k, true);
                p.set_z(k, true);
                num_y++;
                break;
            case 'I':
            case '_':
                break;
            default:
                throw DomainError(std::string("unknown Pauli character '") + text[k] + "'");
        }
    }
    p.r_ = (uint8_t)((s + num_y) & 3);
    return p;
}

std::complex<double> PauliOperator::phase() const {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[r_];
}

uint8_t PauliOperator::hermitian_sign_exponent() const {
    size_t num_y = (xs_ & zs_).popcount();
    return (uint8_t)((r_ + 4 - (num_y & 3)) & 3);
}

size_t PauliOperator::weight() const {
    size_t t = 0;
    for (size_t w = 0; w < xs_.num_words(); w++) {
        t += std::popcount(xs_.word(w) | zs_.word(w));
    }
    return t;
}

PauliOperator &PauliOperator::operator*=(const PauliOperator &rhs) {
    check_same_size(*this, rhs);
    size_t cross = 0;
    for (size_t w = 0; w < xs_.num_words(); w++) {
        cross += std::popcount(zs_.word(w) & rhs.xs_.word(w));
    }
    r_ = (uint8_t)((r_ + rhs.r_ + 2 * (cross & 1)) & 3);
    xs_ ^= rhs.xs_;
    zs_ ^= rhs.zs_;
    return *this;
}

PauliOperator PauliOperator::operator*(const PauliOperator &rhs) const {
    PauliOperator r = *this;
    r *= rhs;
    return r;
}

PauliOperator PauliOperator::inverse() const {
    PauliOperator r = *this;
    uint8_t xz = xs_.dot(zs_) ? 2 : 0;
    r.r_ = (uint8_t)((4 - r_ + xz) & 3);
    return r;
}

std::string PauliOperator::str() const {
    static const char *signs[4] = {"+", "+i", "-", "-i"};
    std::string out = signs[hermitian_sign_exponent()];
    for (size_t k = 0; k < size(); k++) {
        out += "_XZY"[x(k) + 2 * z(k)];
    }
    return out;
}

PauliOperator multiply(const PauliOperator &p, const PauliOperator &q) {
    return p * q;
}

int commutes(const PauliOperator &p, const PauliOperator &q) {
    check_same_size(p, q);
    bool anti = p.xs().dot(q.zs()) ^ p.zs().dot(q.xs());
    return anti ? -1 : +1;
}

SymmetryElement make_symmetry(const TorusLattice &lattice, int c, DiagonalSign sign) {
    if (c < 0 || c >= lattice.n()) {
        throw DomainError("symmetry offset c=" + std::to_string(c) + " outside [0, " + std::to_string(lattice.n()) + ")");
    }
    PauliOperator p(lattice.num_sites());
    for (int x = 0; x < lattice.long_size(); x++) {
        int y = sign == DiagonalSign::Plus ? c + x : c - x;
        p.set_x(lattice.index(x, y), true);
    }
    return {c, sign, std::move(p)};
}

std::vector<SymmetryElement> all_symmetries(const TorusLattice &lattice) {
    std::vector<SymmetryElement> r;
    for (int c = 0; c < lattice.n(); c++) {
        r.push_back(make_symmetry(lattice, c, DiagonalSign::Plus));
        r.push_back(make_symmetry(lattice, c, DiagonalSign::Minus));
    }
    return r;
}

PauliOperator star(const TorusLattice &lattice, int x, int y) {
    if (x < 0 || x >= lattice.long_size() || y < 0 || y >= lattice.n()) {
        std::stringstream ss;
        ss << "star center (" << x << "," << y << ") is not a lattice site";
        throw DomainError(ss.str());
    }
    PauliOperator p(lattice.num_sites());
    p.set_z(lattice.index(x - 1, y), true);
    p.set_z(lattice.index(x + 1, y), true);
    p.set_z(lattice.index(x, y - 1), true);
    p.set_z(lattice.index(x, y + 1), true);
    return p;
}

bool is_symmetric(const TorusLattice &lattice, const PauliOperator &p) {
    for (const auto &s : all_symmetries(lattice)) {
        if (commutes(p, s.op) < 0) {
            return false;
        }
    }
    return true;
}

}  // namespace cpl
