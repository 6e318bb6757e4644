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

#include "cpl/gf2.h"

#include "cpl/errors.h"

namespace cpl {

Gf2Matrix::Gf2Matrix(size_t num_rows, size_t num_cols) : num_cols_(num_cols), rows_(num_rows, BitVector(num_cols)) {
}

BitVector Gf2Matrix::apply(const BitVector &v) const {
    if (v.size() != num_cols_) {
        throw ShapeError("GF(2) vector length does not match matrix column count");
    }
    BitVector out(rows_.size());
    for (size_t r = 0; r < rows_.size(); r++) {
        out.set(r, rows_[r].dot(v));
    }
    return out;
}

Gf2Rref gf2_rref(Gf2Matrix m) {
    std::vector<size_t> pivots;
    size_t next = 0;
    for (size_t c = 0; c < m.num_cols() && next < m.num_rows(); c++) {
        size_t found = next;
        while (found < m.num_rows() && !m.get(found, c)) {
            found++;
        }
        if (found == m.num_rows()) {
            continue;
        }
        std::swap(m.row(found), m.row(next));
        for (size_t r = 0; r < m.num_rows(); r++) {
            if (r != next && m.get(r, c)) {
                m.row(r) ^= m.row(next);
            }
        }
        pivots.push_back(c);
        next++;
    }
    return {std::move(m), std::move(pivots)};
}

size_t gf2_rank(const Gf2Matrix &m) {
    return gf2_rref(m).pivot_cols.size();
}

std::optional<BitVector> gf2_solve(const Gf2Matrix &a, const BitVector &b) {
    if (b.size() != a.num_rows()) {
        throw ShapeError("right-hand side length does not match matrix row count");
    }
    size_t nc = a.num_cols();
    Gf2Matrix aug(a.num_rows(), nc + 1);
    for (size_t r = 0; r < a.num_rows(); r++) {
        for (size_t c : a.row(r).ones()) {
            aug.set(r, c, true);
        }
        aug.set(r, nc, b.get(r));
    }
    Gf2Rref rr = gf2_rref(std::move(aug));
    BitVector x(nc);
    for (size_t i = 0; i < rr.pivot_cols.size(); i++) {
        if (rr.pivot_cols[i] == nc) {
            return std::nullopt;
        }
        x.set(rr.pivot_cols[i], rr.reduced.get(i, nc));
    }
    return x;
}

std::vector<BitVector> gf2_nullspace(const Gf2Matrix &a) {
    Gf2Rref rr = gf2_rref(a);
    std::vector<bool> is_pivot(a.num_cols(), false);
    for (size_t c : rr.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<BitVector> basis;
    for (size_t f = 0; f < a.num_cols(); f++) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector v(a.num_cols());
        v.set(f, true);
        for (size_t i = 0; i < rr.pivot_cols.size(); i++) {
            if (rr.reduced.get(i, f)) {
                v.set(rr.pivot_cols[i], true);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace cpl
