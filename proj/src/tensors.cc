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

#include <cmath>

#include "cpl/errors.h"
#include "cpl/gf2.h"
#include "cpl/rng.h"

namespace cpl {

namespace {

BitVector config_bits(int n, uint64_t config) {
    BitVector b(n);
    for (int k = 0; k < n; k++) {
        b.set(k, (config >> k) & 1);
    }
    return b;
}

int bit(uint64_t v, int k) {
    return (int)((v >> k) & 1);
}

void check_ring_size(int n, int lo, int hi) {
    if (n < lo || n > hi || n % 2 != 0) {
        throw DomainError("ring size " + std::to_string(n) + " outside the supported even range [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
    }
}

// Gate phase exp(i theta x_a x_b) in the X basis, with x = (-1)^bit.
cplx xx_phase(double theta, int sa, int sb) {
    double s = (sa ^ sb) ? -1.0 : 1.0;
    return std::polar(1.0, theta * s);
}

}  // namespace

Peps5Tensor Peps5Tensor::apply(const PauliOperator &op) const {
    if (op.size() != 5) {
        throw ShapeError("PEPS tensor operators act on 5 legs");
    }
    return {pauli_matrix(op) * data};
}

Vec Peps5Tensor::x_component(int a) const {
    Vec v = Vec::Zero(16);
    double amp = 1.0 / std::sqrt(2.0);
    for (int virt = 0; virt < 16; virt++) {
        for (int s = 0; s < 2; s++) {
            v(virt) += ((a & s) ? -amp : amp) * data(s | virt << 1);
        }
    }
    return v;
}

Peps5Tensor cluster_peps_tensor() {
    Peps5Tensor t{Vec::Zero(32)};
    for (int s = 0; s < 2; s++) {
        for (int south = 0; south < 2; south++) {
            for (int east = 0; east < 2; east++) {
                double sign = (s * (south + east)) & 1 ? -1.0 : 1.0;
                t.data(s | s << LEG_N | south << LEG_S | east << LEG_E | s << LEG_W) = sign;
            }
        }
    }
    return t;
}

std::vector<PauliOperator> cluster_tensor_symmetries() {
    // Leg order p, N, S, E, W.
    return {
        PauliOperator::from_str("+XXZZX"),
        PauliOperator::from_str("+_Z__Z"),
        PauliOperator::from_str("+_ZX__"),
        PauliOperator::from_str("+___XZ"),
    };
}

PauliOperator cluster_tensor_extra_symmetry() {
    return PauliOperator::from_str("+ZZ___");
}

Mat contract_ring(const std::vector<Vec> &site_components) {
    int n = (int)site_components.size();
    if (n < 3 || n > 10) {
        throw DomainError("ring contraction supports 3..10 sites");
    }
    size_t dim = size_t{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (size_t e = 0; e < dim; e++) {
        for (size_t w = 0; w < dim; w++) {
            cplx total = 0;
            for (size_t b = 0; b < dim; b++) {
                cplx term = 1;
                for (int y = 0; y < n && term != cplx(0); y++) {
                    int north = bit(b, (y + n - 1) % n);
                    int south = bit(b, y);
                    int idx = north | south << 1 | bit(e, y) << 2 | bit(w, y) << 3;
                    term *= site_components[y](idx);
                }
                total += term;
            }
            m(e, w) = total;
        }
    }
    return m;
}

Mat cluster_ring_matrix(int n, uint64_t config) {
    Peps5Tensor t = cluster_peps_tensor();
    std::vector<Vec> comps;
    for (int y = 0; y < n; y++) {
        comps.push_back(t.x_component(bit(config, y)));
    }
    return contract_ring(comps);
}

Mat clifford_component_matrix(int n, uint64_t config) {
    return hadamard_all_matrix(n) * cz_ring_matrix(n) * pauli_matrix(z_config(n, config_bits(n, config)));
}

Vec contract_cluster_torus(int lx, int ly) {
    if (lx < 1 || ly < 3 || lx * ly > 20) {
        throw DomainError("torus contraction limited to ly >= 3 and at most 20 sites");
    }
    Peps5Tensor t = cluster_peps_tensor();
    size_t cdim = size_t{1} << ly;
    std::vector<Mat> columns;
    for (size_t s = 0; s < cdim; s++) {
        std::vector<Vec> comps;
        for (int y = 0; y < ly; y++) {
            Vec c(16);
            for (int virt = 0; virt < 16; virt++) {
                c(virt) = t.data(bit(s, y) | virt << 1);
            }
            comps.push_back(c);
        }
        columns.push_back(contract_ring(comps));
    }
    size_t total = size_t{1} << (lx * ly);
    Vec psi(total);
    for (size_t s = 0; s < total; s++) {
        Mat acc = columns[s & (cdim - 1)];
        for (int x = 1; x < lx; x++) {
            acc = columns[(s >> (x * ly)) & (cdim - 1)] * acc;
        }
        psi(s) = acc.trace();
    }
    return psi;
}

Tableau RingTensor::algebraic(uint64_t config) const {
    return QcaStep(n).component(config_bits(n, config));
}

Mat RingTensor::dense_component(uint64_t config) const {
    return kron(clifford_component_matrix(n, config), junk[config]);
}

std::vector<Mat> xx_diagonal_record_junk(int n, double theta) {
    size_t d = size_t{1} << n;
    std::vector<Mat> out;
    for (size_t j = 0; j < d; j++) {
        Mat b = Mat::Zero(d, d);
        for (size_t s = 0; s < d; s++) {
            double phase = 0;
            for (int y = 0; y < n; y++) {
                int sy = bit(s, y);
                phase += (sy ^ bit(j, (y + 1) % n)) ? -1.0 : 1.0;
                phase += (sy ^ bit(j, (y + n - 1) % n)) ? -1.0 : 1.0;
            }
            b(j, s) = std::polar(1.0, theta * phase);
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Mat> dense_perturbed_ring_tensor(int n, double theta) {
    check_ring_size(n, 4, 4);
    size_t dim = size_t{1} << n;
    // Gates coupling the previous column (recorded in the junk) to this column.
    std::vector<std::pair<int, int>> pairs;
    for (int y = 0; y < n; y++) {
        pairs.push_back({y, (y + 1) % n});
        pairs.push_back({y, (y + n - 1) % n});
    }
    std::vector<Mat> out;
    for (size_t cfg = 0; cfg < dim; cfg++) {
        Mat ring = cluster_ring_matrix(n, cfg);
        Mat a = Mat::Zero(dim * dim, dim * dim);
        for (size_t e = 0; e < dim; e++) {
            for (size_t w = 0; w < dim; w++) {
                for (size_t in = 0; in < dim; in++) {
                    cplx g = 1;
                    for (auto [prev_row, row] : pairs) {
                        g *= xx_phase(theta, bit(in, prev_row), bit(cfg, row));
                    }
                    a(e * dim + cfg, w * dim + in) = ring(e, w) * g;
                }
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

Factorization factor_ring_tensor(const std::vector<Mat> &components, int n, double tol) {
    size_t dim = size_t{1} << n;
    if (components.size() != dim) {
        throw ShapeError("expected 2^n ring tensor components");
    }
    Factorization f{{}, 0, 0.0};
    for (size_t cfg = 0; cfg < dim; cfg++) {
        const Mat &a = components[cfg];
        if (a.rows() % dim != 0 || a.cols() % dim != 0) {
            throw ShapeError("ring tensor component dimensions are not multiples of 2^n");
        }
        Eigen::Index dr = a.rows() / dim;
        Eigen::Index dc = a.cols() / dim;
        if (cfg == 0) {
            f.junk_dim = (int)dr;
        }
        Mat c = clifford_component_matrix(n, cfg);
        Mat b = Mat::Zero(dr, dc);
        for (size_t l = 0; l < dim; l++) {
            for (size_t lp = 0; lp < dim; lp++) {
                if (c(l, lp) != cplx(0)) {
                    b += std::conj(c(l, lp)) * a.block(l * dr, lp * dc, dr, dc);
                }
            }
        }
        b /= (double)dim;
        double norm = a.norm();
        if (norm == 0) {
            throw FactorizationFailed("ring tensor component is zero", INFINITY);
        }
        double res = (a - kron(c, b)).norm() / norm;
        f.residual = std::max(f.residual, res);
        f.junk.push_back(std::move(b));
    }
    if (!(f.residual <= tol)) {
        throw FactorizationFailed("ring tensor is not of the form C(i) (x) B(i); residual " + std::to_string(f.residual),
                                  f.residual);
    }
    return f;
}

RingTensor build_perturbed_ring_tensors(int n, const JunkSpec &spec) {
    if (spec.family != "xx-diagonal") {
        throw DomainError("unknown junk family '" + spec.family + "'");
    }
    check_ring_size(n, 4, 6);
    if (!(std::abs(spec.theta) <= 0.3)) {
        throw DomainError("theta must satisfy |theta| <= 0.3");
    }
    RingTensor rt;
    rt.n = n;
    rt.spec = spec;
    rt.spec.n = n;
    size_t dim = size_t{1} << n;
    double algebraic_residual = 0;
    for (size_t cfg = 0; cfg < dim; cfg++) {
        Mat ring = cluster_ring_matrix(n, cfg);
        algebraic_residual =
            std::max(algebraic_residual, (ring - clifford_component_matrix(n, cfg)).norm() / ring.norm());
    }
    if (spec.theta == 0.0) {
        rt.junk_dim = 1;
        rt.junk.assign(dim, Mat::Ones(1, 1));
        rt.residual = algebraic_residual;
    } else if (n == 4) {
        Factorization f = factor_ring_tensor(dense_perturbed_ring_tensor(n, spec.theta), n, 1e-8);
        rt.junk_dim = f.junk_dim;
        rt.junk = std::move(f.junk);
        rt.residual = f.residual;
    } else {
        // ||R (x) B - C (x) B|| / ||R (x) B|| = ||R - C|| / ||R||, so the dense Kronecker product is not needed.
        rt.junk = xx_diagonal_record_junk(n, spec.theta);
        rt.junk_dim = (int)dim;
        rt.residual = algebraic_residual;
    }
    if (rt.residual > 1e-8) {
        throw FactorizationFailed("perturbed ring tensor does not factor", rt.residual);
    }
    return rt;
}

DerivedTransition derive_transition_from_symmetries(int n, uint64_t config) {
    check_ring_size(n, 4, 8);
    // Site-component symmetries on legs (N, S, E, W) for the X-basis outcome of each row.
    const int nl = 4 * n;
    auto leg = [&](int y, int l) { return (size_t)(4 * y + l - 1); };
    std::vector<PauliOperator> gens;
    for (int y = 0; y < n; y++) {
        for (const PauliOperator &s : cluster_tensor_symmetries()) {
            if (s.z(LEG_P)) {
                continue;
            }
            PauliOperator g(nl);
            for (int l = LEG_N; l <= LEG_W; l++) {
                g.set_x(leg(y, l), s.x(l));
                g.set_z(leg(y, l), s.z(l));
            }
            uint8_t r = s.phase_exponent();
            if (s.x(LEG_P) && bit(config, y)) {
                r += 2;
            }
            g.set_phase_exponent(r);
            gens.push_back(std::move(g));
        }
    }
    // Bond S(y)-N(y+1): X and Z parts must agree for the contraction to carry the symmetry.
    Gf2Matrix bonds(2 * n, gens.size());
    for (int y = 0; y < n; y++) {
        size_t s = leg(y, LEG_S);
        size_t nn = leg((y + 1) % n, LEG_N);
        for (size_t j = 0; j < gens.size(); j++) {
            bonds.set(2 * y, j, gens[j].x(s) ^ gens[j].x(nn));
            bonds.set(2 * y + 1, j, gens[j].z(s) ^ gens[j].z(nn));
        }
    }
    std::vector<PauliOperator> ring_ops;
    for (const BitVector &v : gf2_nullspace(bonds)) {
        PauliOperator p(nl);
        for (size_t j : v.ones()) {
            p *= gens[j];
        }
        PauliOperator r(2 * n);
        for (int k = 0; k < n; k++) {
            r.set_x(k, p.x(leg(k, LEG_E)));
            r.set_z(k, p.z(leg(k, LEG_E)));
            r.set_x(n + k, p.x(leg(k, LEG_W)));
            r.set_z(n + k, p.z(leg(k, LEG_W)));
        }
        r.set_phase_exponent(p.phase_exponent());
        if (r.has_no_support()) {
            if (r.phase_exponent() != 0) {
                throw InternalError("ring symmetry constraints are inconsistent");
            }
            continue;
        }
        ring_ops.push_back(std::move(r));
    }
    // Independent subset of size 2n.
    std::vector<PauliOperator> chosen;
    {
        std::vector<BitVector> basis;
        for (const PauliOperator &r : ring_ops) {
            Gf2Matrix m(basis.size() + 1, 4 * n);
            for (size_t i = 0; i < basis.size(); i++) {
                m.row(i) = basis[i];
            }
            BitVector vec(4 * n);
            for (int k = 0; k < 2 * n; k++) {
                vec.set(k, r.x(k));
                vec.set(2 * n + k, r.z(k));
            }
            m.row(basis.size()) = vec;
            if (gf2_rank(m) == basis.size() + 1) {
                basis.push_back(vec);
                chosen.push_back(r);
            }
        }
    }
    if ((int)chosen.size() != 2 * n) {
        throw InternalError("ring symmetry constraints do not have full rank");
    }
    for (size_t i = 0; i < chosen.size(); i++) {
        for (size_t j = i + 1; j < chosen.size(); j++) {
            if (commutes(chosen[i], chosen[j]) < 0) {
                throw InternalError("ring symmetry constraints do not commute");
            }
        }
    }
    // Stabilizer state by projection of a fixed random vector.
    size_t dim = size_t{1} << n;
    Rng rng(0x5eed);
    Vec psi(dim * dim);
    for (Eigen::Index k = 0; k < psi.size(); k++) {
        psi(k) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    }
    for (const PauliOperator &s : chosen) {
        psi = 0.5 * (psi + apply_pauli(s, psi));
    }
    if (psi.norm() < 1e-8) {
        throw InternalError("ring symmetry constraints have no common solution");
    }
    for (const PauliOperator &s : ring_ops) {
        if ((apply_pauli(s, psi) - psi).norm() > 1e-9 * psi.norm()) {
            throw InternalError("ring symmetry constraints are inconsistent");
        }
    }
    DerivedTransition out{chosen, Mat(dim, dim), Tableau(n)};
    for (size_t e = 0; e < dim; e++) {
        for (size_t w = 0; w < dim; w++) {
            out.op(e, w) = psi(e | w << n);
        }
    }
    out.op *= std::sqrt((double)dim) / out.op.norm();
    if ((out.op.adjoint() * out.op - Mat::Identity(dim, dim)).norm() > 1e-10) {
        throw InternalError("derived ring operator is not unitary");
    }
    // S = i^r P_E Q_W with P = X^a Z^b, Q = X^c Z^d gives op Q op^dagger = i^-r (-1)^(a.b + c.d) P.
    std::vector<PauliOperator> q_parts;
    std::vector<PauliOperator> images;
    for (const PauliOperator &s : chosen) {
        PauliOperator p(n), q(n);
        for (int k = 0; k < n; k++) {
            p.set_x(k, s.x(k));
            p.set_z(k, s.z(k));
            q.set_x(k, s.x(n + k));
            q.set_z(k, s.z(n + k));
        }
        int sign = (p.xs().dot(p.zs()) ? 2 : 0) + (q.xs().dot(q.zs()) ? 2 : 0);
        p.set_phase_exponent((uint8_t)((4 - s.phase_exponent() + sign) & 3));
        q_parts.push_back(q);
        images.push_back(p);
    }
    Gf2Matrix span(2 * n, chosen.size());
    for (size_t j = 0; j < chosen.size(); j++) {
        for (int k = 0; k < n; k++) {
            span.set(k, j, q_parts[j].x(k));
            span.set(n + k, j, q_parts[j].z(k));
        }
    }
    for (int g = 0; g < 2 * n; g++) {
        BitVector target(2 * n);
        target.set(g, true);
        auto sol = gf2_solve(span, target);
        if (!sol) {
            throw InternalError("ring constraints do not determine the operator");
        }
        PauliOperator pre(n), img(n);
        for (size_t j : sol->ones()) {
            pre *= q_parts[j];
            img *= images[j];
        }
        // pre = i^t g with g phase-free, so op g op^dagger = i^-t img.
        img.set_phase_exponent((uint8_t)((img.phase_exponent() + 4 - pre.phase_exponent()) & 3));
        if (g < n) {
            out.clifford.set_x_image(g, img);
        } else {
            out.clifford.set_z_image(g - n, img);
        }
    }
    return out;
}

}  // namespace cpl
