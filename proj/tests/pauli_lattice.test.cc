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

#include <random>

#include "cpl/dense.h"
#include "cpl/errors.h"
#include "gtest/gtest.h"

using namespace cpl;

namespace {

PauliOperator random_pauli(size_t n, std::mt19937_64 &rng) {
    PauliOperator p(n);
    for (size_t k = 0; k < n; k++) {
        p.set_x(k, rng() & 1);
        p.set_z(k, rng() & 1);
    }
    p.set_phase_exponent(rng() & 3);
    return p;
}

std::vector<Site> x_sites(const TorusLattice &lat, const PauliOperator &p) {
    std::vector<Site> r;
    for (size_t k : p.xs().ones()) {
        r.push_back(lat.site(k));
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<Site> z_sites(const TorusLattice &lat, const PauliOperator &p) {
    std::vector<Site> r;
    for (size_t k : p.zs().ones()) {
        r.push_back(lat.site(k));
    }
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace

TEST(torus_lattice, geometry) {
    TorusLattice lat(4, 2);
    ASSERT_EQ(lat.num_sites(), 32u);
    ASSERT_EQ(lat.index(1, 2), 6u);
    ASSERT_EQ(lat.index(-1, -1), lat.index(7, 3));
    ASSERT_EQ(lat.site(6), (Site{1, 2}));
    ASSERT_EQ(lat.parity({1, 2}), 1);
    ASSERT_THROW(TorusLattice(5, 1), DomainError);
    ASSERT_THROW(TorusLattice(2, 1), DomainError);
    ASSERT_THROW(TorusLattice(4, 0), DomainError);
}

TEST(pauli_operator, str_round_trip) {
    for (const char *s : {"+XYZ_", "-_Y__", "+iXX", "-iZZY"}) {
        ASSERT_EQ(PauliOperator::from_str(s).str(), s);
    }
    ASSERT_EQ(PauliOperator::from_str("XIZ").str(), "+X_Z");
    ASSERT_THROW(PauliOperator::from_str("+XQ"), DomainError);
}

TEST(make_symmetry, examples) {
    TorusLattice lat(4, 1);
    auto u = make_symmetry(lat, 0, DiagonalSign::Plus);
    ASSERT_EQ(x_sites(lat, u.op), (std::vector<Site>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}));
    ASSERT_TRUE(u.op.is_x_type());
    ASSERT_EQ(u.op.phase_exponent(), 0);
    auto v = make_symmetry(lat, 1, DiagonalSign::Minus);
    ASSERT_EQ(x_sites(lat, v.op), (std::vector<Site>{{0, 1}, {1, 0}, {2, 3}, {3, 2}}));
    ASSERT_THROW(make_symmetry(lat, 4, DiagonalSign::Plus), DomainError);
    ASSERT_THROW(make_symmetry(lat, -1, DiagonalSign::Minus), DomainError);
}

TEST(make_symmetry, weight_is_long_circumference) {
    for (int n : {4, 6, 8}) {
        for (int N : {1, 2, 3}) {
            TorusLattice lat(n, N);
            for (const auto &s : all_symmetries(lat)) {
                ASSERT_EQ(s.op.weight(), (size_t)(n * N));
                ASSERT_TRUE(s.op.is_x_type());
            }
        }
    }
}

TEST(multiply, examples) {
    auto x = PauliOperator::from_str("X");
    auto z = PauliOperator::from_str("Z");
    auto xz = multiply(x, z);
    ASSERT_EQ(xz.str(), "-iY");
    ASSERT_TRUE(multiply(xz, multiply(z, x)).has_no_support());
    ASSERT_EQ(multiply(xz, multiply(z, x)).phase_exponent(), 0);
    auto p = PauliOperator::from_str("+XYZ_");
    ASSERT_EQ(multiply(p, PauliOperator::identity(4)), p);
    TorusLattice lat(4, 1);
    auto s = star(lat, 1, 1);
    ASSERT_EQ(multiply(s, s), PauliOperator::identity(16));
    ASSERT_THROW(multiply(PauliOperator(3), PauliOperator(4)), ShapeError);
}

TEST(commutes, examples) {
    ASSERT_EQ(commutes(PauliOperator::from_str("X"), PauliOperator::from_str("Z")), -1);
    ASSERT_EQ(commutes(PauliOperator::from_str("XX"), PauliOperator::from_str("ZZ")), +1);
    ASSERT_THROW(commutes(PauliOperator(3), PauliOperator(4)), ShapeError);
}

TEST(star, examples) {
    TorusLattice lat(4, 1);
    ASSERT_EQ(z_sites(lat, star(lat, 1, 1)), (std::vector<Site>{{0, 1}, {1, 0}, {1, 2}, {2, 1}}));
    ASSERT_EQ(z_sites(lat, star(lat, 0, 0)), (std::vector<Site>{{0, 1}, {0, 3}, {1, 0}, {3, 0}}));
    ASSERT_EQ(star(lat, 0, 0).phase_exponent(), 0);
    ASSERT_THROW(star(lat, 4, 0), DomainError);
}

TEST(star, commutes_with_every_symmetry) {
    for (int n : {4, 6, 8}) {
        for (int N : {1, 2}) {
            TorusLattice lat(n, N);
            auto syms = all_symmetries(lat);
            for (int x = 0; x < lat.long_size(); x++) {
                for (int y = 0; y < n; y++) {
                    auto s = star(lat, x, y);
                    for (const auto &u : syms) {
                        ASSERT_EQ(commutes(s, u.op), +1);
                    }
                }
            }
        }
    }
}

TEST(star, single_site_z_is_not_symmetric) {
    for (int n : {4, 6, 8}) {
        for (int N : {1, 2}) {
            TorusLattice lat(n, N);
            for (size_t k = 0; k < lat.num_sites(); k++) {
                ASSERT_FALSE(is_symmetric(lat, PauliOperator::single(lat.num_sites(), k, 'Z')));
            }
        }
    }
}

TEST(star, half_torus_pair_is_symmetric) {
    for (int n : {4, 6, 8}) {
        TorusLattice lat(n, 1);
        for (int x = 0; x < n; x++) {
            for (int y = 0; y < n; y++) {
                // Consecutive intersections of the two diagonals through (x, y).
                auto p = PauliOperator::z_on(lat.num_sites(), {lat.index(x, y), lat.index(x + n / 2, y + n / 2)});
                ASSERT_TRUE(is_symmetric(lat, p));
            }
        }
    }
}

TEST(pauli_operator, group_laws_match_dense_matrices) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; trial++) {
        size_t n = 1 + trial % 6;
        auto p = random_pauli(n, rng);
        auto q = random_pauli(n, rng);
        auto r = random_pauli(n, rng);
        ASSERT_EQ((p * q) * r, p * (q * r));
        ASSERT_EQ(p * q * q.inverse(), p);
        ASSERT_TRUE((p * p.inverse()).has_no_support());
        ASSERT_EQ((p * p.inverse()).phase_exponent(), 0);
        ASSERT_LT((pauli_matrix(p * q) - pauli_matrix(p) * pauli_matrix(q)).norm(), 1e-12);
        Mat pq = pauli_matrix(p) * pauli_matrix(q);
        Mat qp = pauli_matrix(q) * pauli_matrix(p);
        ASSERT_LT((pq - commutes(p, q) * qp).norm(), 1e-12);
    }
    for (int trial = 0; trial < 20; trial++) {
        auto p = random_pauli(10, rng);
        auto q = random_pauli(10, rng);
        Vec v = Vec::Random(1 << 10);
        ASSERT_LT((pauli_matrix(p * q) * v - pauli_matrix(p) * (pauli_matrix(q) * v)).norm(), 1e-10);
    }
}

TEST(pauli_operator, hermitian_sign_matches_matrix) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; trial++) {
        auto p = random_pauli(3, rng);
        Mat m = pauli_matrix(p);
        bool hermitian = (m - m.adjoint()).norm() < 1e-12;
        ASSERT_EQ(hermitian, (p.hermitian_sign_exponent() & 1) == 0);
    }
}
