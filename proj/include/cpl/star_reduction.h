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

#ifndef CPL_STAR_REDUCTION_H
#define CPL_STAR_REDUCTION_H

#include <optional>
#include <vector>

#include "cpl/pauli_lattice.h"
#include "cpl/rng.h"

namespace cpl {

/// A product of Pauli Z operators on a set of lattice sites.
class ZSupport {
   public:
    explicit ZSupport(const TorusLattice &lattice);
    ZSupport(const TorusLattice &lattice, const std::vector<Site> &sites);
    /// Throws PreconditionError if p has an X part.
    static ZSupport from_pauli(const TorusLattice &lattice, const PauliOperator &p);

    const TorusLattice &lattice() const {
        return lattice_;
    }
    const BitVector &bits() const {
        return bits_;
    }
    bool contains(Site s) const {
        return bits_.get(lattice_.index(s));
    }
    void toggle(Site s) {
        bits_.flip(lattice_.index(s));
    }
    /// Sites in increasing index order, i.e. lexicographic in (x, y).
    std::vector<Site> sites() const;
    size_t weight() const {
        return bits_.popcount();
    }
    bool empty() const {
        return bits_.none();
    }
    PauliOperator to_pauli() const;
    /// Restriction to one sublattice.
    ZSupport on_sublattice(int parity) const;
    bool operator==(const ZSupport &other) const {
        return lattice_ == other.lattice_ && bits_ == other.bits_;
    }

   private:
    TorusLattice lattice_;
    BitVector bits_;
};

/// Sites anchor + a(1,1) + b(1,-1) for 0 <= a < h, 0 <= b < v.
struct SkewedRegion {
    Site anchor;
    int h;
    int v;

    Site site(const TorusLattice &lattice, int a, int b) const;
    /// Rotated coordinates of s, if s lies in the region.
    std::optional<std::pair<int, int>> coords(const TorusLattice &lattice, Site s) const;
    bool on_boundary(int a, int b) const {
        return a == 0 || b == 0 || a == h - 1 || b == v - 1;
    }
    int parity(const TorusLattice &lattice) const {
        return lattice.parity(anchor);
    }
    int area() const {
        return h * v;
    }
    /// Both sides at most n/2, so that every diagonal meets the region in a single row or column.
    bool is_local(const TorusLattice &lattice) const {
        return h >= 1 && v >= 1 && 2 * h <= lattice.n() && 2 * v <= lattice.n();
    }
    /// Star centered at (x0+a+b+1, y0+a-b), covering the cells (a..a+1, b..b+1).
    Site plaquette_center(const TorusLattice &lattice, int a, int b) const;
};

/// Star centers, each listed once (product taken mod 2).
struct StarDecomposition {
    std::vector<Site> centers;

    void toggle(Site s);
    void normalize();
    bool operator==(const StarDecomposition &) const = default;
};

ZSupport star_product(const TorusLattice &lattice, const StarDecomposition &stars);

struct Relocation {
    ZSupport support;
    StarDecomposition stars;
};

/// Pushes interior Z's to the boundary of the region. support == output * product(stars).
Relocation relocate_to_boundary(const ZSupport &z, const SkewedRegion &region);

/// Smallest local skewed region containing all sites (all on one sublattice).
std::optional<SkewedRegion> enclosing_region(const TorusLattice &lattice, const std::vector<Site> &sites);

/// Writes a symmetric local Z operator as a product of stars.
StarDecomposition reduce_to_stars(const ZSupport &z);

/// Solves for z as a GF(2) combination of star supports. Free variables are zero.
std::optional<StarDecomposition> gf2_star_solve(const ZSupport &z);

/// Random product of plaquette stars inside a random local region on each sublattice.
/// The result is symmetric and local by construction.
ZSupport sample_local_symmetric_z(const TorusLattice &lattice, Rng &rng);

}  // namespace cpl

#endif
