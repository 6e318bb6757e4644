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

#ifndef CPL_GF2_H
#define CPL_GF2_H

#include <optional>
#include <vector>

#include "cpl/bit_vector.h"

namespace cpl {

/// Dense matrix over GF(2), stored as packed rows.
class Gf2Matrix {
   public:
    Gf2Matrix(size_t num_rows, size_t num_cols);

    size_t num_rows() const {
        return rows_.size();
    }
    size_t num_cols() const {
        return num_cols_;
    }
    bool get(size_t r, size_t c) const {
        return rows_[r].get(c);
    }
    void set(size_t r, size_t c, bool v) {
        rows_[r].set(c, v);
    }
    void flip(size_t r, size_t c) {
        rows_[r].flip(c);
    }
    const BitVector &row(size_t r) const {
        return rows_[r];
    }
    BitVector &row(size_t r) {
        return rows_[r];
    }
    BitVector apply(const BitVector &v) const;

   private:
    size_t num_cols_;
    std::vector<BitVector> rows_;
};

/// Reduced row echelon form, pivots chosen in increasing column order.
struct Gf2Rref {
    Gf2Matrix reduced;
    std::vector<size_t> pivot_cols;
};

Gf2Rref gf2_rref(Gf2Matrix m);
size_t gf2_rank(const Gf2Matrix &m);
/// Solves A x = b. Free variables are set to zero. Returns nullopt if inconsistent.
std::optional<BitVector> gf2_solve(const Gf2Matrix &a, const BitVector &b);
/// Basis of {x : A x = 0}, one vector per free column in increasing order.
std::vector<BitVector> gf2_nullspace(const Gf2Matrix &a);

}  // namespace cpl

#endif
