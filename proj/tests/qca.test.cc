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

#include "cpl/qca.h"

#include "cpl/dense.h"
#include "cpl/errors.h"
#include "cpl/rng.h"
#include "gtest/gtest.h"

using namespace cpl;

namespace {

Mat dense_c0(int n) {
    return hadamard_all_matrix(n) * cz_ring_matrix(n);
}

Mat dense_component(int n, const BitVector &bits) {
    return dense_c0(n) * pauli_matrix(z_config(n, bits));
}

BitVector random_bits(int n, Rng &rng) {
    BitVector b(n);
    for (int k = 0; k < n; k++) {
        b.set(k, rng.bit());
    }
    return b;
}

RingPauli random_ring_pauli(int n, Rng &rng) {
    RingPauli p(n);
    for (int k = 0; k < n; k++) {
        p.set_x(k, rng.bit());
        p.set_z(k, rng.bit());
    }
    return p;
}

}  // namespace

TEST(qca_conjugate, examples) {
    QcaStep step(6);
    for (int k = 0; k < 6; k++) {
        ASSERT_EQ(qca_conjugate(step, PauliOperator::single(6, k, 'Z')), PauliOperator::single(6, k, 'X'));
        RingPauli expected = PauliOperator::single(6, (k + 5) % 6, 'X') * PauliOperator::single(6, k, 'Z') *
                             PauliOperator::single(6, (k + 1) % 6, 'X');
        ASSERT_EQ(qca_conjugate(step, PauliOperator::single(6, k, 'X')), expected);
    }
    ASSERT_EQ(qca_conjugate(step, RingPauli(6)), RingPauli(6));
    ASSERT_THROW(qca_conjugate(step, RingPauli(4)), ShapeError);
}

TEST(qca_conjugate, matches_dense_matrices) {
    int n = 4;
    QcaStep step(n);
    Mat c = dense_c0(n);
    for (int k = 0; k < n; k++) {
        for (char g : {'X', 'Z', 'Y'}) {
            auto p = PauliOperator::single(n, k, g);
            Mat expected = c * pauli_matrix(p) * c.adjoint();
            ASSERT_LT((pauli_matrix(step.conjugate(p)) - expected).norm(), 1e-10);
            Mat back = c.adjoint() * pauli_matrix(p) * c;
            ASSERT_LT((pauli_matrix(step.conjugate_inverse(p)) - back).norm(), 1e-10);
        }
    }
}

TEST(qca_conjugate, preserves_commutation) {
    Rng rng(8);
    for (int trial = 0; trial < 300; trial++) {
        int n = 4 + 2 * (int)rng.below(6);
        QcaStep step(n);
        auto p = random_ring_pauli(n, rng);
        auto q = random_ring_pauli(n, rng);
        ASSERT_EQ(commutes(p, q), commutes(step.conjugate(p), step.conjugate(q)));
        ASSERT_EQ(step.conjugate_inverse(step.conjugate(p)), p);
        ASSERT_EQ(step.conjugate(p * q), step.conjugate(p) * step.conjugate(q));
    }
}

TEST(qca_period, equals_ring_size) {
    for (int n = 4; n <= 32; n += 2) {
        ASSERT_EQ(qca_period(n), n) << n;
    }
    ASSERT_EQ(qca_period(64), 64);
    ASSERT_THROW(qca_period(5), DomainError);
    ASSERT_THROW(qca_period(2), DomainError);
    ASSERT_THROW(qca_period(66), DomainError);
}

TEST(qca_period, dense_power_is_identity) {
    for (int n : {4, 6}) {
        Mat c = dense_c0(n);
        Mat p = Mat::Identity(c.rows(), c.cols());
        for (int k = 0; k < n; k++) {
            p = c * p;
        }
        ASSERT_LT(distance_up_to_phase(Mat::Identity(c.rows(), c.cols()), p), 1e-10);
        for (int s : qca_period_phases(n)) {
            ASSERT_EQ(s, 0);
        }
    }
}

TEST(qca_evolve, glider_returns_after_period) {
    QcaStep step(6);
    auto z = PauliOperator::single(6, 2, 'Z');
    auto evo = qca_evolve(step, z, 6);
    ASSERT_EQ(evo.size(), 7u);
    ASSERT_EQ(evo[6], z);
    for (int t = 1; t < 6; t++) {
        ASSERT_NE(evo[t], z);
    }
}

TEST(tableau, inverse_and_pauli_extraction) {
    Rng rng(3);
    QcaStep step(8);
    Tableau t = step.component(random_bits(8, rng));
    Tableau id = t.then(t.inverse());
    ASSERT_EQ(id, Tableau(8));
    auto p = PauliOperator::from_str("+XYZ_");
    auto q = Tableau::from_pauli(p).as_pauli();
    ASSERT_TRUE(q.has_value());
    ASSERT_EQ(*q, p);
    ASSERT_FALSE(step.forward().as_pauli().has_value());
}

TEST(block_byproduct, all_zero_is_identity) {
    for (int n : {4, 6, 8}) {
        QcaStep step(n);
        auto p = block_byproduct(step, BlockConfig(n));
        ASSERT_TRUE(p.has_no_support());
    }
}

TEST(block_byproduct, single_bit_is_forward_image) {
    int n = 4;
    QcaStep step(n);
    for (int t = 0; t < n; t++) {
        for (int k = 0; k < n; k++) {
            BlockConfig cfg(n);
            cfg.set(t, k, true);
            auto expected = step.conjugate_power(PauliOperator::single(n, k, 'Z'), n - t);
            ASSERT_EQ(block_byproduct(step, cfg), expected);
        }
    }
}

TEST(block_byproduct, matches_dense_product) {
    int n = 4;
    QcaStep step(n);
    Rng rng(17);
    for (int trial = 0; trial < 40; trial++) {
        BlockConfig cfg(n);
        Mat u = Mat::Identity(1 << n, 1 << n);
        Tableau total(n);
        for (int t = 0; t < n; t++) {
            cfg.rings[t] = random_bits(n, rng);
            u = dense_component(n, cfg.rings[t]) * u;
            total = total.then(step.component(cfg.rings[t]));
        }
        auto p = block_byproduct(step, cfg);
        ASSERT_LT(distance_up_to_phase(u, pauli_matrix(p)), 1e-10);
        auto q = total.as_pauli();
        ASSERT_TRUE(q.has_value());
        ASSERT_TRUE(q->same_support_as(p));
    }
}

TEST(block_byproduct, homomorphism) {
    Rng rng(4);
    for (int n : {4, 6, 10}) {
        QcaStep step(n);
        for (int trial = 0; trial < 30; trial++) {
            BlockConfig a(n), b(n), ab(n);
            for (int t = 0; t < n; t++) {
                a.rings[t] = random_bits(n, rng);
                b.rings[t] = random_bits(n, rng);
                ab.rings[t] = a.rings[t] ^ b.rings[t];
            }
            auto pa = block_byproduct(step, a);
            auto pb = block_byproduct(step, b);
            ASSERT_TRUE((pa * pb).same_support_as(block_byproduct(step, ab)));
        }
    }
}
