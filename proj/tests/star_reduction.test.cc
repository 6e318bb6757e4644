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

#include "cpl/errors.h"
#include "cpl/gf2.h"
#include "gtest/gtest.h"

using namespace cpl;

namespace {

ZSupport star_support(const TorusLattice &lat, int x, int y) {
    return ZSupport::from_pauli(lat, star(lat, x, y));
}

bool all_on_boundary(const ZSupport &z, const SkewedRegion &r) {
    for (Site s : z.sites()) {
        auto c = r.coords(z.lattice(), s);
        if (!c || !r.on_boundary(c->first, c->second)) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(skewed_region, coordinates) {
    TorusLattice lat(8, 1);
    SkewedRegion r{{2, 3}, 3, 2};
    ASSERT_EQ(r.site(lat, 0, 0), (Site{2, 3}));
    ASSERT_EQ(r.site(lat, 1, 0), (Site{3, 4}));
    ASSERT_EQ(r.site(lat, 0, 1), (Site{3, 2}));
    ASSERT_EQ(r.coords(lat, {4, 3}), std::make_pair(1, 1));
    ASSERT_FALSE(r.coords(lat, {2, 5}).has_value());
    ASSERT_EQ(r.plaquette_center(lat, 0, 0), (Site{3, 3}));
    ASSERT_TRUE(r.is_local(lat));
    ASSERT_FALSE((SkewedRegion{{0, 0}, 5, 1}).is_local(lat));
}

TEST(relocate_to_boundary, empty) {
    TorusLattice lat(8, 1);
    SkewedRegion r{{0, 0}, 4, 4};
    auto rel = relocate_to_boundary(ZSupport(lat), r);
    ASSERT_TRUE(rel.support.empty());
    ASSERT_TRUE(rel.stars.centers.empty());
}

TEST(relocate_to_boundary, already_on_boundary) {
    TorusLattice lat(8, 1);
    SkewedRegion r{{0, 0}, 4, 4};
    ZSupport z(lat, {r.site(lat, 0, 2), r.site(lat, 3, 1), r.site(lat, 2, 3)});
    auto rel = relocate_to_boundary(z, r);
    ASSERT_EQ(rel.support, z);
    ASSERT_TRUE(rel.stars.centers.empty());
}

TEST(relocate_to_boundary, interior_site_pushed_to_corner) {
    TorusLattice lat(8, 1);
    SkewedRegion r{{1, 2}, 4, 4};
    for (int a = 1; a < 3; a++) {
        for (int b = 1; b < 3; b++) {
            ZSupport z(lat, {r.site(lat, a, b)});
            auto rel = relocate_to_boundary(z, r);
            ASSERT_TRUE(all_on_boundary(rel.support, r));
            ASSERT_FALSE(rel.stars.centers.empty());
            PauliOperator back = rel.support.to_pauli() * star_product(lat, rel.stars).to_pauli();
            ASSERT_EQ(back, z.to_pauli());
        }
    }
}

TEST(relocate_to_boundary, preconditions) {
    TorusLattice lat(8, 1);
    SkewedRegion r{{0, 0}, 3, 3};
    ASSERT_THROW(relocate_to_boundary(ZSupport(lat, {{5, 5}}), r), PreconditionError);
    ASSERT_THROW(relocate_to_boundary(ZSupport(lat, {{0, 0}, {1, 0}}), r), PreconditionError);
}

TEST(relocate_to_boundary, preserves_symmetry_status) {
    Rng rng(21);
    TorusLattice lat(8, 1);
    SkewedRegion r{{2, 2}, 4, 4};
    for (int trial = 0; trial < 200; trial++) {
        ZSupport z(lat);
        for (int a = 0; a < 4; a++) {
            for (int b = 0; b < 4; b++) {
                if (rng.below(3) == 0) {
                    z.toggle(r.site(lat, a, b));
                }
            }
        }
        auto rel = relocate_to_boundary(z, r);
        ASSERT_TRUE(all_on_boundary(rel.support, r));
        ASSERT_EQ(is_symmetric(lat, z.to_pauli()), is_symmetric(lat, rel.support.to_pauli()));
    }
}

TEST(reduce_to_stars, single_star) {
    for (int n : {4, 6, 8}) {
        TorusLattice lat(n, 2);
        for (int x = 0; x < lat.long_size(); x++) {
            for (int y = 0; y < n; y++) {
                auto d = reduce_to_stars(star_support(lat, x, y));
                ASSERT_EQ(d.centers, (std::vector<Site>{{x, y}}));
            }
        }
    }
}

TEST(reduce_to_stars, two_stars) {
    TorusLattice lat(6, 1);
    PauliOperator p = star(lat, 1, 1) * star(lat, 2, 2);
    ZSupport z = ZSupport::from_pauli(lat, p);
    auto d = reduce_to_stars(z);
    ASSERT_EQ(star_product(lat, d), z);
    auto g = gf2_star_solve(z);
    ASSERT_TRUE(g.has_value());
    ASSERT_EQ(star_product(lat, *g), z);
}

TEST(reduce_to_stars, half_torus_pair_is_not_local) {
    for (int n : {4, 6, 8, 10}) {
        for (int N : {1, 2}) {
            TorusLattice lat(n, N);
            ZSupport z(lat, {{0, 0}, {n / 2, n / 2}});
            ASSERT_THROW(reduce_to_stars(z), NotLocal);
        }
    }
}

TEST(reduce_to_stars, not_symmetric) {
    TorusLattice lat(6, 1);
    ASSERT_THROW(reduce_to_stars(ZSupport(lat, {{2, 3}})), NotSymmetric);
}

TEST(reduce_to_stars, empty) {
    TorusLattice lat(6, 1);
    ASSERT_TRUE(reduce_to_stars(ZSupport(lat)).centers.empty());
}

TEST(reduce_to_stars, random_local_operators_agree_with_gf2) {
    Rng rng(2024);
    for (int trial = 0; trial < 200; trial++) {
        int n = 6 + 2 * (trial % 4);
        TorusLattice lat(n, 1 + trial % 2);
        ZSupport z = sample_local_symmetric_z(lat, rng);
        ASSERT_TRUE(is_symmetric(lat, z.to_pauli()));
        auto d = reduce_to_stars(z);
        ASSERT_EQ(star_product(lat, d), z);
        auto g = gf2_star_solve(z);
        ASSERT_TRUE(g.has_value());
        // Both solutions differ by an element of the kernel of the star map.
        StarDecomposition diff = d;
        for (Site s : g->centers) {
            diff.toggle(s);
        }
        ASSERT_TRUE(star_product(lat, diff).empty());
    }
}

TEST(gf2_star_solve, star_support) {
    TorusLattice lat(6, 1);
    auto g = gf2_star_solve(star_support(lat, 2, 3));
    ASSERT_TRUE(g.has_value());
    ASSERT_EQ(g->centers.size(), 1u);
    ASSERT_EQ(g->centers[0], (Site{2, 3}));
}

TEST(gf2_star_solve, single_site_unsolvable) {
    TorusLattice lat(4, 1);
    for (size_t k = 0; k < lat.num_sites(); k++) {
        ASSERT_FALSE(gf2_star_solve(ZSupport(lat, {lat.site(k)})).has_value());
    }
}

TEST(gf2_star_solve, star_span_misses_half_torus_pairs) {
    // Exhaustive rank check on the 4x4 torus: stars span a proper subspace of the symmetric Z's.
    TorusLattice lat(4, 1);
    size_t ns = lat.num_sites();
    Gf2Matrix stars(ns, ns);
    for (size_t c = 0; c < ns; c++) {
        Site s = lat.site(c);
        for (size_t r : star(lat, s.x, s.y).zs().ones()) {
            stars.flip(c, r);
        }
    }
    auto syms = all_symmetries(lat);
    Gf2Matrix constraints(syms.size(), ns);
    for (size_t i = 0; i < syms.size(); i++) {
        for (size_t k : syms[i].op.xs().ones()) {
            constraints.set(i, k, true);
        }
    }
    size_t symmetric_dim = ns - gf2_rank(constraints);
    ASSERT_LT(gf2_rank(stars), symmetric_dim);
    ASSERT_FALSE(gf2_star_solve(ZSupport(lat, {{0, 0}, {2, 2}})).has_value());
}
