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

#include "cpl/star_reduction.h"

#include <algorithm>
#include <limits>

#include "cpl/errors.h"
#include "cpl/gf2.h"

namespace cpl {

namespace {

int mod(int a, int m) {
    int r = a % m;
    return r < 0 ? r + m : r;
}

void toggle_plaquette(ZSupport &z, StarDecomposition &stars, const SkewedRegion &r, int a, int b) {
    const TorusLattice &lat = z.lattice();
    z.toggle(r.site(lat, a, b));
    z.toggle(r.site(lat, a + 1, b));
    z.toggle(r.site(lat, a, b + 1));
    z.toggle(r.site(lat, a + 1, b + 1));
    stars.toggle(r.plaquette_center(lat, a, b));
}

void check_inside(const ZSupport &z, const SkewedRegion &region) {
    const TorusLattice &lat = z.lattice();
    if (region.h < 1 || region.v < 1) {
        throw PreconditionError("skewed region must have positive sides");
    }
    std::vector<bool> seen(lat.num_sites(), false);
    for (int a = 0; a < region.h; a++) {
        for (int b = 0; b < region.v; b++) {
            size_t k = lat.index(region.site(lat, a, b));
            if (seen[k]) {
                throw PreconditionError("skewed region overlaps itself on the torus");
            }
            seen[k] = true;
        }
    }
    for (Site s : z.sites()) {
        if (!seen[lat.index(s)]) {
            throw PreconditionError("Z support is not inside the skewed region");
        }
        if (lat.parity(s) != region.parity(lat)) {
            throw PreconditionError("Z support and region lie on different sublattices");
        }
    }
}

// Reduces a boundary-relocated support inside a local region by rectangle cancellations.
void cancel_quadruples(ZSupport &z, StarDecomposition &stars, const SkewedRegion &region) {
    const TorusLattice &lat = z.lattice();
    int h = region.h;
    int v = region.v;
    std::vector<char> grid((size_t)h * v, 0);
    auto at = [&](int a, int b) -> char & { return grid[(size_t)a * v + b]; };
    for (Site s : z.sites()) {
        auto c = region.coords(lat, s);
        at(c->first, c->second) = 1;
    }
    size_t bound = 4 * (size_t)region.area();
    for (size_t iter = 0;; iter++) {
        if (iter > bound) {
            throw InternalError("quadruple cancellation exceeded its iteration bound");
        }
        int ia = -1, ib = -1;
        for (int a = 0; a < h && ia < 0; a++) {
            for (int b = 0; b < v; b++) {
                if (at(a, b)) {
                    ia = a;
                    ib = b;
                    break;
                }
            }
        }
        if (ia < 0) {
            return;
        }
        int ja = -1;
        for (int a = 0; a < h; a++) {
            if (a != ia && at(a, ib)) {
                ja = a;
                break;
            }
        }
        int kb = -1;
        for (int b = 0; b < v; b++) {
            if (b != ib && at(ia, b)) {
                kb = b;
                break;
            }
        }
        if (ja < 0 || kb < 0) {
            throw InternalError("symmetric support has an unpaired site on a diagonal");
        }
        for (int a = std::min(ia, ja); a < std::max(ia, ja); a++) {
            for (int b = std::min(ib, kb); b < std::max(ib, kb); b++) {
                toggle_plaquette(z, stars, region, a, b);
            }
        }
        at(ia, ib) ^= 1;
        at(ja, ib) ^= 1;
        at(ia, kb) ^= 1;
        at(ja, kb) ^= 1;
    }
}

}  // namespace

ZSupport::ZSupport(const TorusLattice &lattice) : lattice_(lattice), bits_(lattice.num_sites()) {
}

ZSupport::ZSupport(const TorusLattice &lattice, const std::vector<Site> &sites) : ZSupport(lattice) {
    for (Site s : sites) {
        if (s.x < 0 || s.x >= lattice.long_size() || s.y < 0 || s.y >= lattice.n()) {
            throw DomainError("site outside lattice bounds");
        }
        bits_.set(lattice.index(s), true);
    }
}

ZSupport ZSupport::from_pauli(const TorusLattice &lattice, const PauliOperator &p) {
    if (p.size() != lattice.num_sites()) {
        throw ShapeError("Pauli operator size does not match lattice");
    }
    if (!p.is_z_type()) {
        throw PreconditionError("operator has an X part");
    }
    ZSupport z(lattice);
    z.bits_ = p.zs();
    return z;
}

std::vector<Site> ZSupport::sites() const {
    std::vector<Site> r;
    for (size_t k : bits_.ones()) {
        r.push_back(lattice_.site(k));
    }
    return r;
}

PauliOperator ZSupport::to_pauli() const {
    return PauliOperator(BitVector(bits_.size()), bits_);
}

ZSupport ZSupport::on_sublattice(int parity) const {
    ZSupport r(lattice_);
    for (Site s : sites()) {
        if (lattice_.parity(s) == parity) {
            r.toggle(s);
        }
    }
    return r;
}

Site SkewedRegion::site(const TorusLattice &lattice, int a, int b) const {
    return lattice.wrap(anchor.x + a + b, anchor.y + a - b);
}

std::optional<std::pair<int, int>> SkewedRegion::coords(const TorusLattice &lattice, Site s) const {
    int dx = mod(s.x - anchor.x, lattice.long_size());
    int dy = mod(s.y - anchor.y, lattice.n());
    for (int a = 0; a < h; a++) {
        for (int b = 0; b < v; b++) {
            if (mod(a + b, lattice.long_size()) == dx && mod(a - b, lattice.n()) == dy) {
                return std::make_pair(a, b);
            }
        }
    }
    return std::nullopt;
}

Site SkewedRegion::plaquette_center(const TorusLattice &lattice, int a, int b) const {
    return lattice.wrap(anchor.x + a + b + 1, anchor.y + a - b);
}

void StarDecomposition::toggle(Site s) {
    auto it = std::find(centers.begin(), centers.end(), s);
    if (it == centers.end()) {
        centers.push_back(s);
    } else {
        centers.erase(it);
    }
}

void StarDecomposition::normalize() {
    std::sort(centers.begin(), centers.end());
    std::vector<Site> out;
    for (size_t i = 0; i < centers.size();) {
        size_t j = i;
        while (j < centers.size() && centers[j] == centers[i]) {
            j++;
        }
        if ((j - i) & 1) {
            out.push_back(centers[i]);
        }
        i = j;
    }
    centers = std::move(out);
}

ZSupport star_product(const TorusLattice &lattice, const StarDecomposition &stars) {
    PauliOperator p(lattice.num_sites());
    for (Site c : stars.centers) {
        p *= star(lattice, c.x, c.y);
    }
    return ZSupport::from_pauli(lattice, p);
}

Relocation relocate_to_boundary(const ZSupport &z, const SkewedRegion &region) {
    check_inside(z, region);
    const TorusLattice &lat = z.lattice();
    Relocation out{z, {}};
    for (int a = region.h - 2; a >= 1; a--) {
        for (int b = region.v - 2; b >= 1; b--) {
            if (out.support.contains(region.site(lat, a, b))) {
                toggle_plaquette(out.support, out.stars, region, a - 1, b - 1);
            }
        }
    }
    out.stars.normalize();
    return out;
}

std::optional<SkewedRegion> enclosing_region(const TorusLattice &lattice, const std::vector<Site> &sites) {
    if (sites.empty()) {
        return std::nullopt;
    }
    int n = lattice.n();
    int L = lattice.long_size();
    int half = n / 2;
    // Displacement (dx, dy) -> rotated coordinates within a half-size square.
    std::vector<int> table((size_t)L * n, -1);
    for (int a = 0; a < half; a++) {
        for (int b = 0; b < half; b++) {
            table[(size_t)mod(a + b, L) * n + mod(a - b, n)] = a * half + b;
        }
    }
    int parity = lattice.parity(sites[0]);
    std::optional<SkewedRegion> best;
    int best_key = std::numeric_limits<int>::max();
    for (int x = 0; x < L; x++) {
        for (int y = 0; y < n; y++) {
            if (((x + y) & 1) != parity) {
                continue;
            }
            int h = 0;
            int v = 0;
            bool ok = true;
            for (Site s : sites) {
                int e = table[(size_t)mod(s.x - x, L) * n + mod(s.y - y, n)];
                if (e < 0) {
                    ok = false;
                    break;
                }
                h = std::max(h, e / half + 1);
                v = std::max(v, e % half + 1);
            }
            if (!ok) {
                continue;
            }
            int key = std::max(h, v) * n * n + h * v;
            if (key < best_key) {
                best_key = key;
                best = SkewedRegion{{x, y}, h, v};
            }
        }
    }
    return best;
}

StarDecomposition reduce_to_stars(const ZSupport &z) {
    const TorusLattice &lat = z.lattice();
    if (!is_symmetric(lat, z.to_pauli())) {
        throw NotSymmetric("Z operator does not commute with every stripe symmetry");
    }
    StarDecomposition total;
    for (int parity = 0; parity < 2; parity++) {
        ZSupport part = z.on_sublattice(parity);
        if (part.empty()) {
            continue;
        }
        auto region = enclosing_region(lat, part.sites());
        if (!region.has_value()) {
            throw NotLocal("Z support does not fit in a skewed square of side n/2");
        }
        Relocation rel = relocate_to_boundary(part, *region);
        StarDecomposition stars = rel.stars;
        ZSupport rest = rel.support;
        cancel_quadruples(rest, stars, *region);
        if (!rest.empty()) {
            throw InternalError("star reduction left a nonzero remainder");
        }
        total.centers.insert(total.centers.end(), stars.centers.begin(), stars.centers.end());
    }
    total.normalize();
    if (!(star_product(lat, total) == z)) {
        throw InternalError("star reduction does not reproduce its input");
    }
    return total;
}

std::optional<StarDecomposition> gf2_star_solve(const ZSupport &z) {
    const TorusLattice &lat = z.lattice();
    size_t ns = lat.num_sites();
    Gf2Matrix a(ns, ns);
    for (size_t c = 0; c < ns; c++) {
        Site s = lat.site(c);
        for (size_t r : star(lat, s.x, s.y).zs().ones()) {
            a.flip(r, c);
        }
    }
    auto sol = gf2_solve(a, z.bits());
    if (!sol.has_value()) {
        return std::nullopt;
    }
    StarDecomposition d;
    for (size_t c : sol->ones()) {
        d.centers.push_back(lat.site(c));
    }
    return d;
}

ZSupport sample_local_symmetric_z(const TorusLattice &lattice, Rng &rng) {
    ZSupport z(lattice);
    int half = lattice.n() / 2;
    for (int parity = 0; parity < 2; parity++) {
        if (parity == 1 && rng.bit()) {
            continue;
        }
        int side = 2 + (int)rng.below(half - 1);
        int x = (int)rng.below(lattice.long_size());
        int y = (int)rng.below(lattice.n());
        if (((x + y) & 1) != parity) {
            y = (y + 1) % lattice.n();
        }
        SkewedRegion region{{x, y}, side, side};
        StarDecomposition unused;
        for (int a = 0; a + 1 < side; a++) {
            for (int b = 0; b + 1 < side; b++) {
                if (rng.bit()) {
                    toggle_plaquette(z, unused, region, a, b);
                }
            }
        }
    }
    return z;
}

}  // namespace cpl
