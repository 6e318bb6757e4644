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

#include "cpl/tensors.h"

#include "cpl/errors.h"
#include "cpl/rng.h"
#include "gtest/gtest.h"

using namespace cpl;

namespace {

Mat random_unitary(int d, Rng &rng) {
    Mat g(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            g(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
    }
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ();
}

BitVector bits_of(int n, uint64_t v) {
    BitVector b(n);
    for (int k = 0; k < n; k++) {
        b.set(k, (v >> k) & 1);
    }
    return b;
}

// Pauli on an lx-by-ly torus state with qubit index x*ly + y.
PauliOperator torus_pauli(int lx, int ly, const std::vector<std::pair<int, int>> &sites, char g) {
    PauliOperator p(lx * ly);
    for (auto [x, y] : sites) {
        int k = ((x % lx + lx) % lx) * ly + ((y % ly + ly) % ly);
        p *= PauliOperator::single(lx * ly, k, g);
    }
    return p;
}

}  // namespace

TEST(cluster_peps_tensor, symmetries_hold_exactly) {
    Peps5Tensor t = cluster_peps_tensor();
    auto first = PauliOperator::from_str("+XXZZX");
    ASSERT_LT((t.apply(first).data - t.data).norm(), 1e-12);
    for (const auto &s : cluster_tensor_symmetries()) {
        ASSERT_LT((t.apply(s).data - t.data).norm(), 1e-12) << s.str();
    }
    ASSERT_LT((t.apply(cluster_tensor_extra_symmetry()).data - t.data).norm(), 1e-12);
}

TEST(cluster_peps_tensor, symmetries_determine_the_tensor) {
    std::vector<PauliOperator> all = cluster_tensor_symmetries();
    all.push_back(cluster_tensor_extra_symmetry());
    Mat proj = Mat::Identity(32, 32);
    for (const auto &s : all) {
        proj = proj * 0.5 * (Mat::Identity(32, 32) + pauli_matrix(s));
    }
    ASSERT_NEAR(proj.trace().real(), 1.0, 1e-12);
    // Without the extra symmetry the solution space is two-dimensional.
    Mat four = Mat::Identity(32, 32);
    for (const auto &s : cluster_tensor_symmetries()) {
        four = four * 0.5 * (Mat::Identity(32, 32) + pauli_matrix(s));
    }
    ASSERT_NEAR(four.trace().real(), 2.0, 1e-12);
}

TEST(cluster_ring_matrix, equals_clifford_component) {
    for (int n : {4, 6}) {
        for (uint64_t cfg = 0; cfg < (uint64_t{1} << n); cfg++) {
            Mat a = cluster_ring_matrix(n, cfg);
            ASSERT_LT((a - clifford_component_matrix(n, cfg)).norm(), 1e-12);
        }
    }
}

TEST(cluster_ring_matrix, component_relations) {
    int n = 4;
    QcaStep step(n);
    Mat c0 = clifford_component_matrix(n, 0);
    for (uint64_t cfg = 0; cfg < 16; cfg++) {
        Mat zi = pauli_matrix(z_config(n, bits_of(n, cfg)));
        ASSERT_LT((clifford_component_matrix(n, cfg) - c0 * zi).norm(), 1e-12);
        for (int k = 0; k < n; k++) {
            Mat xk = pauli_matrix(PauliOperator::single(n, k, 'X'));
            double sign = (cfg >> k) & 1 ? -1.0 : 1.0;
            ASSERT_LT((zi * xk - sign * xk * zi).norm(), 1e-12);
        }
    }
}

TEST(contract_cluster_torus, star_equals_x) {
    for (auto [lx, ly] : std::vector<std::pair<int, int>>{{3, 4}, {4, 3}, {3, 3}}) {
        Vec psi = contract_cluster_torus(lx, ly);
        ASSERT_GT(psi.norm(), 0);
        for (int x = 0; x < lx; x++) {
            for (int y = 0; y < ly; y++) {
                auto st = torus_pauli(lx, ly, {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}}, 'Z');
                auto xs = torus_pauli(lx, ly, {{x, y}}, 'X');
                ASSERT_LT((apply_pauli(st, psi) - apply_pauli(xs, psi)).norm(), 1e-12 * psi.norm());
            }
        }
        // Direct product of controlled-Z gates on |+>.
        size_t total = size_t{1} << (lx * ly);
        Vec cz(total);
        for (size_t s = 0; s < total; s++) {
            int par = 0;
            for (int x = 0; x < lx; x++) {
                for (int y = 0; y < ly; y++) {
                    int a = (s >> (x * ly + y)) & 1;
                    par ^= a & ((s >> (((x + 1) % lx) * ly + y)) & 1);
                    par ^= a & ((s >> (x * ly + (y + 1) % ly)) & 1);
                }
            }
            cz(s) = par ? -1.0 : 1.0;
        }
        ASSERT_LT(distance_up_to_phase(cz, psi), 1e-12);
    }
}

TEST(build_perturbed_ring_tensors, cluster_point_is_trivial) {
    for (int n : {4, 6}) {
        RingTensor rt = build_perturbed_ring_tensors(n, {"xx-diagonal", 0.0, n});
        ASSERT_EQ(rt.junk_dim, 1);
        for (const Mat &b : rt.junk) {
            ASSERT_EQ(b.rows(), 1);
            ASSERT_EQ(b(0, 0), cplx(1));
        }
        ASSERT_LE(rt.residual, 1e-12);
    }
}

TEST(build_perturbed_ring_tensors, perturbed_family_factors) {
    for (int n : {4, 6}) {
        RingTensor rt = build_perturbed_ring_tensors(n, {"xx-diagonal", 0.1, n});
        ASSERT_LE(rt.residual, 1e-8);
        ASSERT_EQ(rt.junk_dim, 1 << n);
        for (uint64_t cfg = 0; cfg < (uint64_t{1} << n); cfg++) {
            ASSERT_EQ(rt.algebraic(cfg), QcaStep(n).component(bits_of(n, cfg)));
        }
    }
}

TEST(build_perturbed_ring_tensors, domain_errors) {
    ASSERT_THROW(build_perturbed_ring_tensors(4, {"zz", 0.1, 4}), DomainError);
    ASSERT_THROW(build_perturbed_ring_tensors(4, {"xx-diagonal", 0.31, 4}), DomainError);
    ASSERT_THROW(build_perturbed_ring_tensors(8, {"xx-diagonal", 0.1, 8}), DomainError);
}

TEST(build_perturbed_ring_tensors, matches_perturbed_torus_state) {
    // X-basis amplitudes of exp(i theta sum XX)|C> on a 3-by-4 torus versus the ring tensor trace.
    int n = 4, lx = 3;
    double theta = 0.17;
    RingTensor rt = build_perturbed_ring_tensors(n, {"xx-diagonal", theta, n});
    Vec psi = contract_cluster_torus(lx, n);
    int q = lx * n;
    Vec x_amp = hadamard_all_apply(psi);
    double max_err = 0;
    cplx ratio = 0;
    for (size_t s = 0; s < (size_t{1} << q); s++) {
        cplx g = 1;
        for (int x = 0; x < lx; x++) {
            for (int y = 0; y < n; y++) {
                int a = (s >> (x * n + y)) & 1;
                int x1 = (x + 1) % lx;
                for (int dy : {1, -1}) {
                    int b = (s >> (x1 * n + (y + dy + n) % n)) & 1;
                    g *= std::polar(1.0, theta * ((a ^ b) ? -1.0 : 1.0));
                }
            }
        }
        cplx want = g * x_amp(s);
        // Tr of a product of Kronecker products is the product of the traces.
        Mat c = clifford_component_matrix(n, s & 15);
        Mat b = rt.junk[s & 15];
        for (int x = 1; x < lx; x++) {
            c = clifford_component_matrix(n, (s >> (4 * x)) & 15) * c;
            b = rt.junk[(s >> (4 * x)) & 15] * b;
        }
        cplx got = c.trace() * b.trace();
        if (ratio == cplx(0) && std::abs(want) > 1e-6) {
            ratio = got / want;
        }
        max_err = std::max(max_err, std::abs(got - ratio * want));
    }
    ASSERT_GT(std::abs(ratio), 0);
    ASSERT_LT(max_err, 1e-9 * std::abs(ratio));
}

TEST(factor_ring_tensor, exact_cluster_ring) {
    int n = 4;
    std::vector<Mat> a;
    for (uint64_t cfg = 0; cfg < 16; cfg++) {
        a.push_back(cluster_ring_matrix(n, cfg));
    }
    Factorization f = factor_ring_tensor(a, n, 1e-12);
    ASSERT_EQ(f.junk_dim, 1);
    ASSERT_LE(f.residual, 1e-12);
}

TEST(factor_ring_tensor, perturbed_family) {
    Factorization f = factor_ring_tensor(dense_perturbed_ring_tensor(4, 0.2), 4, 1e-8);
    ASSERT_LE(f.residual, 1e-8);
    auto record = xx_diagonal_record_junk(4, 0.2);
    for (size_t cfg = 0; cfg < 16; cfg++) {
        ASSERT_LT((f.junk[cfg] - record[cfg]).norm(), 1e-10);
    }
}

TEST(factor_ring_tensor, random_tensor_fails) {
    Rng rng(9);
    std::vector<Mat> a;
    for (int cfg = 0; cfg < 16; cfg++) {
        a.push_back(random_unitary(32, rng));
    }
    ASSERT_THROW(factor_ring_tensor(a, 4), FactorizationFailed);
}

TEST(factor_ring_tensor, gauge_invariance) {
    Rng rng(10);
    auto a = dense_perturbed_ring_tensor(4, 0.25);
    Mat v = random_unitary(16, rng);
    Mat w = random_unitary(16, rng);
    Mat lv = kron(Mat::Identity(16, 16), v);
    Mat lw = kron(Mat::Identity(16, 16), w);
    std::vector<Mat> b;
    for (const Mat &m : a) {
        b.push_back(lv * m * lw.adjoint());
    }
    Factorization fa = factor_ring_tensor(a, 4);
    Factorization fb = factor_ring_tensor(b, 4);
    ASSERT_NEAR(fa.residual, fb.residual, 1e-12);
    for (size_t cfg = 0; cfg < 16; cfg++) {
        ASSERT_LT((fb.junk[cfg] - v * fa.junk[cfg] * w.adjoint()).norm(), 1e-10);
    }
}

TEST(factor_ring_tensor, shape_errors) {
    ASSERT_THROW(factor_ring_tensor(std::vector<Mat>(3, Mat::Zero(16, 16)), 4), ShapeError);
    ASSERT_THROW(factor_ring_tensor(std::vector<Mat>(16, Mat::Zero(15, 16)), 4), ShapeError);
}

TEST(xx_diagonal_record_junk, continuity_at_zero) {
    auto b0 = xx_diagonal_record_junk(4, 0.0);
    double prev = INFINITY;
    for (double theta : {0.1, 0.01, 0.001}) {
        auto bt = xx_diagonal_record_junk(4, theta);
        double dist = 0;
        for (size_t cfg = 0; cfg < 16; cfg++) {
            dist = std::max(dist, (bt[cfg] / bt[cfg].norm() - b0[cfg] / b0[cfg].norm()).norm());
        }
        ASSERT_LT(dist, prev);
        prev = dist;
    }
    ASSERT_LT(prev, 1e-2);
}

TEST(derive_transition_from_symmetries, matches_clifford_component) {
    Rng rng(12);
    for (int n : {4, 6}) {
        for (int trial = 0; trial < 8; trial++) {
            uint64_t cfg = trial == 0 ? 0 : rng.below(uint64_t{1} << n);
            DerivedTransition d = derive_transition_from_symmetries(n, cfg);
            ASSERT_EQ((int)d.constraints.size(), 2 * n);
            ASSERT_LT(distance_up_to_phase(clifford_component_matrix(n, cfg), d.op), 1e-10);
            ASSERT_EQ(d.clifford, QcaStep(n).component(bits_of(n, cfg)));
        }
    }
}

TEST(derive_transition_from_symmetries, sign_structure) {
    int n = 4;
    for (int k = 0; k < n; k++) {
        uint64_t cfg = uint64_t{1} << k;
        DerivedTransition d = derive_transition_from_symmetries(n, cfg);
        Vec psi(256);
        for (size_t e = 0; e < 16; e++) {
            for (size_t w = 0; w < 16; w++) {
                psi(e | w << 4) = d.op(e, w);
            }
        }
        for (int j = 0; j < n; j++) {
            PauliOperator a = PauliOperator::single(2 * n, j, 'X') * PauliOperator::single(2 * n, n + j, 'Z');
            ASSERT_LT((apply_pauli(a, psi) - psi).norm(), 1e-10);
            PauliOperator b = PauliOperator::single(2 * n, (j + n - 1) % n, 'X') * PauliOperator::single(2 * n, j, 'Z') *
                              PauliOperator::single(2 * n, (j + 1) % n, 'X') * PauliOperator::single(2 * n, n + j, 'X');
            double sign = j == k ? -1.0 : 1.0;
            ASSERT_LT((apply_pauli(b, psi) - sign * psi).norm(), 1e-10);
        }
    }
}
