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

#include "cpl/mbqc_engine.h"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "cpl/errors.h"

namespace cpl {

namespace {

bool bit(uint64_t v, int k) {
    return (v >> k) & 1;
}

BitVector bits_of(int n, uint64_t v) {
    BitVector b(n);
    for (int k = 0; k < n; k++) {
        b.set(k, bit(v, k));
    }
    return b;
}

/// Rows of the logical index are l*D + j; the Pauli acts on l.
Mat pauli_left(const PauliOperator &p, const Mat &rho, int D) {
    uint64_t xm = p.size() ? p.xs().word(0) : 0;
    uint64_t zm = p.size() ? p.zs().word(0) : 0;
    cplx ph = p.phase();
    size_t L = size_t{1} << p.size();
    Mat out(rho.rows(), rho.cols());
    for (size_t l = 0; l < L; l++) {
        cplx f = (std::popcount(zm & l) & 1) ? -ph : ph;
        out.middleRows((l ^ xm) * D, D) = f * rho.middleRows(l * D, D);
    }
    return out;
}

/// rho (P (x) I)^dagger.
Mat pauli_right_dagger(const Mat &rho, const PauliOperator &p, int D) {
    uint64_t xm = p.size() ? p.xs().word(0) : 0;
    uint64_t zm = p.size() ? p.zs().word(0) : 0;
    cplx ph = std::conj(p.phase());
    size_t L = size_t{1} << p.size();
    Mat out(rho.rows(), rho.cols());
    for (size_t l = 0; l < L; l++) {
        cplx f = (std::popcount(zm & l) & 1) ? -ph : ph;
        out.middleCols((l ^ xm) * D, D) = f * rho.middleCols(l * D, D);
    }
    return out;
}

/// (I (x) B) rho.
Mat junk_left(const Mat &b, const Mat &rho) {
    int D = (int)b.rows();
    Mat out(rho.rows(), rho.cols());
    Eigen::Map<const Mat> in(rho.data(), D, rho.size() / D);
    Eigen::Map<Mat> o(out.data(), D, rho.size() / D);
    o.noalias() = b * in;
    return out;
}

/// t (I (x) B)^dagger.
Mat junk_right_dagger(const Mat &t, const Mat &b) {
    int D = (int)b.rows();
    Mat bd = b.adjoint();
    Mat out(t.rows(), t.cols());
    for (Eigen::Index c = 0; c < t.cols(); c += D) {
        out.middleCols(c, D).noalias() = t.middleCols(c, D) * bd;
    }
    return out;
}

/// (I (x) A) rho (I (x) B)^dagger.
Mat junk_sandwich(const Mat &a, const Mat &rho, const Mat &b) {
    return junk_right_dagger(junk_left(a, rho), b);
}

/// R(j + D jp, l + L lp) = rho(l D + j, lp D + jp): columns are vectorized junk blocks.
Mat gather(const Mat &rho, int D) {
    size_t L = rho.rows() / D;
    Mat r(D * D, L * L);
    for (size_t lp = 0; lp < L; lp++) {
        for (size_t l = 0; l < L; l++) {
            for (int jp = 0; jp < D; jp++) {
                for (int j = 0; j < D; j++) {
                    r(j + D * jp, l + L * lp) = rho(l * D + j, lp * D + jp);
                }
            }
        }
    }
    return r;
}

Mat scatter(const Mat &r, int D) {
    size_t L = (size_t)std::llround(std::sqrt((double)r.cols()));
    Mat out(L * D, L * D);
    for (size_t lp = 0; lp < L; lp++) {
        for (size_t l = 0; l < L; l++) {
            for (int jp = 0; jp < D; jp++) {
                for (int j = 0; j < D; j++) {
                    out(l * D + j, lp * D + jp) = r(j + D * jp, l + L * lp);
                }
            }
        }
    }
    return out;
}

/// (I (x) S) on the junk part of rho, with S a column-major superoperator.
Mat superop_apply(const Mat &s, const Mat &rho, int D) {
    return scatter(s * gather(rho, D), D);
}

/// acc += coef (P (x) I) rho (Q (x) I)^dagger in the gathered layout.
void add_pauli_sandwich(Mat &acc, const Mat &r, const PauliOperator &p, const PauliOperator &q, cplx coef) {
    size_t L = size_t{1} << p.size();
    uint64_t xp = p.size() ? p.xs().word(0) : 0;
    uint64_t zp = p.size() ? p.zs().word(0) : 0;
    uint64_t xq = q.size() ? q.xs().word(0) : 0;
    uint64_t zq = q.size() ? q.zs().word(0) : 0;
    cplx base = coef * p.phase() * std::conj(q.phase());
    for (size_t lp = 0; lp < L; lp++) {
        cplx fq = (std::popcount(zq & lp) & 1) ? -base : base;
        for (size_t l = 0; l < L; l++) {
            cplx f = (std::popcount(zp & l) & 1) ? -fq : fq;
            acc.col((l ^ xp) + L * (lp ^ xq)) += f * r.col(l + L * lp);
        }
    }
}

Mat hermitian_part(const Mat &m) {
    return (m + m.adjoint()) / 2.0;
}

/// Dual fixed point of X -> sum B^dagger X B by power iteration; returns (R, eigenvalue).
std::pair<Mat, double> dual_fixed_point(const std::vector<Mat> &kraus) {
    int D = (int)kraus[0].rows();
    Mat r = Mat::Identity(D, D) / (double)D;
    double lam = 0;
    for (int it = 0; it < 20000; it++) {
        Mat y = Mat::Zero(D, D);
        for (const Mat &b : kraus) {
            y.noalias() += b.adjoint() * r * b;
        }
        lam = y.trace().real() / r.trace().real();
        y = hermitian_part(y) / y.trace().real();
        double diff = (y - r).norm();
        r = y;
        if (diff < 1e-14) {
            break;
        }
    }
    return {r, lam};
}

void check_block_aligned(const VirtualState &s, const MeasurementPattern &pat) {
    if (s.ring_phase != 0) {
        throw PreconditionError("patterns start at a block boundary");
    }
    if (s.n != pat.n()) {
        throw ShapeError("pattern and state ring sizes differ");
    }
}

void check_period(int n) {
    static std::mutex mu;
    static std::map<int, bool> ok;
    std::lock_guard<std::mutex> lock(mu);
    auto it = ok.find(n);
    if (it == ok.end()) {
        bool good = n % qca_period(n) == 0;
        if (good) {
            for (int ph : qca_period_phases(n)) {
                good = good && ph == 0;
            }
        }
        it = ok.emplace(n, good).first;
    }
    if (!it->second) {
        throw DomainError("C(0)^n is not the identity for this ring size");
    }
}

struct Branch {
    uint64_t outcome;  // special outcome vector, bit s for specials[s]
    uint64_t others;   // X outcomes of the remaining rows, bit y for row y
    Mat rho;
};

/// One ring with special rows `rows`: all branches of K rho K^dagger. With sum_others, the
/// branches are summed over the X outcomes of the other rows.
std::vector<Branch> ring_branches(const BlockChannel &ch, const Mat &rho, const std::vector<int> &rows,
                                  const std::vector<SiteBasis> &bases, const std::vector<PauliOperator> &gens,
                                  bool sum_others) {
    int n = ch.n();
    int D = ch.junk_dim();
    int S = (int)rows.size();
    uint64_t special_mask = 0;
    for (int r : rows) {
        special_mask |= uint64_t{1} << r;
    }
    std::vector<int> other_rows;
    for (int y = 0; y < n; y++) {
        if (!bit(special_mask, y)) {
            other_rows.push_back(y);
        }
    }
    size_t A = size_t{1} << S;
    std::vector<std::array<std::array<cplx, 2>, 2>> coef;
    for (const SiteBasis &b : bases) {
        coef.push_back(basis_coefficients(b));
    }
    // Products of generators for every flip pattern.
    std::vector<PauliOperator> gflip(A, PauliOperator(n));
    for (size_t d = 0; d < A; d++) {
        for (int s = 0; s < S; s++) {
            if (bit(d, s)) {
                gflip[d] = gflip[d] * gens[s];
            }
        }
    }
    auto config = [&](uint64_t oc, uint64_t a) {
        uint64_t cfg = 0;
        for (size_t k = 0; k < other_rows.size(); k++) {
            if (bit(oc, (int)k)) {
                cfg |= uint64_t{1} << other_rows[k];
            }
        }
        for (int s = 0; s < S; s++) {
            if (bit(a, s)) {
                cfg |= uint64_t{1} << rows[s];
            }
        }
        return cfg;
    };
    auto nominal = [&](uint64_t o) {
        uint64_t nom = 0;
        for (int s = 0; s < S; s++) {
            if (bases[s].kind != BasisKind::Hadamard01 && bit(o, s)) {
                nom |= uint64_t{1} << s;
            }
        }
        return nom;
    };
    size_t num_others = size_t{1} << other_rows.size();
    std::vector<Branch> out;
    if (sum_others && D > 1 && num_others >= 2) {
        // Averaged branches through cached pair superoperators in the gathered layout.
        Mat r = gather(rho, D);
        std::vector<Mat> acc(A, Mat::Zero(r.rows(), r.cols()));
        for (uint64_t a = 0; a < A; a++) {
            for (uint64_t b = 0; b < A; b++) {
                Mat y = ch.pair_superop(special_mask, a, b) * r;
                for (uint64_t o = 0; o < A; o++) {
                    cplx ca = 1;
                    cplx cb = 1;
                    for (int s = 0; s < S; s++) {
                        ca *= coef[s][bit(o, s)][bit(a, s)];
                        cb *= coef[s][bit(o, s)][bit(b, s)];
                    }
                    if (ca == 0.0 || cb == 0.0) {
                        continue;
                    }
                    uint64_t nom = nominal(o);
                    add_pauli_sandwich(acc[o], y, gflip[a ^ nom], gflip[b ^ nom], ca * std::conj(cb));
                }
            }
        }
        for (uint64_t o = 0; o < A; o++) {
            out.push_back({o, 0, hermitian_part(scatter(acc[o], D))});
        }
        return out;
    }
    std::vector<Mat> acc;
    if (sum_others) {
        acc.assign(A, Mat::Zero(rho.rows(), rho.cols()));
    }
    std::vector<Mat> left(A);
    for (uint64_t oc = 0; oc < num_others; oc++) {
        for (uint64_t a = 0; a < A; a++) {
            left[a] = junk_left(ch.kraus()[config(oc, a)], rho);
        }
        for (uint64_t o = 0; o < A; o++) {
            uint64_t nom = nominal(o);
            std::vector<cplx> c(A);
            for (uint64_t a = 0; a < A; a++) {
                c[a] = 1;
                for (int s = 0; s < S; s++) {
                    c[a] *= coef[s][bit(o, s)][bit(a, s)];
                }
            }
            // K rho K^dagger with K = sum_a c_a (G_{a^nom} (x) B_a).
            Mat t = Mat::Zero(rho.rows(), rho.cols());
            for (uint64_t a = 0; a < A; a++) {
                if (c[a] != 0.0) {
                    t += c[a] * pauli_left(gflip[a ^ nom], left[a], D);
                }
            }
            Mat r = Mat::Zero(rho.rows(), rho.cols());
            for (uint64_t b = 0; b < A; b++) {
                if (c[b] != 0.0) {
                    r += std::conj(c[b]) *
                         pauli_right_dagger(junk_right_dagger(t, ch.kraus()[config(oc, b)]), gflip[b ^ nom], D);
                }
            }
            if (sum_others) {
                acc[o] += r;
            } else {
                out.push_back({o, config(oc, 0) & ~special_mask, hermitian_part(r)});
            }
        }
    }
    if (sum_others) {
        for (uint64_t o = 0; o < A; o++) {
            out.push_back({o, 0, hermitian_part(acc[o])});
        }
    }
    return out;
}

struct RingSpecials {
    std::vector<int> rows;
    std::vector<SiteBasis> bases;
};

RingSpecials ring_specials(const MeasurementPattern &pat, int m) {
    RingSpecials rs;
    for (int l = 0; l < pat.n(); l++) {
        if (pat.at(m, l).kind != BasisKind::SymX) {
            rs.rows.push_back(l);
            rs.bases.push_back(pat.at(m, l));
        }
    }
    return rs;
}

}  // namespace

struct BlockChannel::Cache {
    std::mutex mu;
    std::map<std::array<uint64_t, 3>, Mat> pairs;
    bool block_done = false;
    Mat block;
};

const Mat &BlockChannel::pair_superop(uint64_t mask, uint64_t a, uint64_t b) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    std::array<uint64_t, 3> key{mask, a, b};
    auto it = cache_->pairs.find(key);
    if (it != cache_->pairs.end()) {
        return it->second;
    }
    std::vector<int> rows;
    std::vector<int> others;
    for (int y = 0; y < n_; y++) {
        (bit(mask, y) ? rows : others).push_back(y);
    }
    auto spread = [&](const std::vector<int> &where, uint64_t v) {
        uint64_t cfg = 0;
        for (size_t k = 0; k < where.size(); k++) {
            if (bit(v, (int)k)) {
                cfg |= uint64_t{1} << where[k];
            }
        }
        return cfg;
    };
    int D = junk_dim_;
    Mat m = Mat::Zero(D * D, D * D);
    for (uint64_t oc = 0; oc < (uint64_t{1} << others.size()); oc++) {
        uint64_t base = spread(others, oc);
        m += kron(kraus_[base | spread(rows, b)].conjugate(), kraus_[base | spread(rows, a)]);
    }
    return cache_->pairs.emplace(key, std::move(m)).first->second;
}

const Mat &BlockChannel::block_superop() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->block_done) {
        cache_->block_done = true;
        if (junk_dim_ <= 16) {
            Mat s = ring_superop_;
            for (int t = 1; t < n_; t++) {
                s = ring_superop_ * s;
            }
            cache_->block = s;
        }
    }
    return cache_->block;
}

BlockChannel BlockChannel::from_kraus(int n, std::vector<Mat> kraus) {
    if (n < 1 || kraus.size() != (size_t{1} << n)) {
        throw ShapeError("a ring channel needs 2^n Kraus operators");
    }
    BlockChannel ch;
    ch.n_ = n;
    ch.junk_dim_ = (int)kraus[0].rows();
    for (const Mat &b : kraus) {
        if (b.rows() != ch.junk_dim_ || b.cols() != ch.junk_dim_) {
            throw ShapeError("Kraus operators must be square of equal size");
        }
    }
    ch.kraus_ = std::move(kraus);
    ch.cache_ = std::make_shared<Cache>();
    int D = ch.junk_dim_;
    ch.ring_superop_ = Mat::Zero(D * D, D * D);
    for (const Mat &b : ch.kraus_) {
        ch.ring_superop_ += kron(b.conjugate(), b);
    }
    return ch;
}

BlockChannel BlockChannel::from_ring_tensor(const RingTensor &rt) {
    if (rt.junk.size() != (size_t{1} << rt.n)) {
        throw ShapeError("ring tensor has the wrong number of components");
    }
    auto [r, lam] = dual_fixed_point(rt.junk);
    Eigen::SelfAdjointEigenSolver<Mat> es(r);
    const auto &kappa = es.eigenvalues();
    double kmax = kappa.maxCoeff();
    std::vector<int> keep;
    for (int i = 0; i < kappa.size(); i++) {
        if (kappa(i) > 1e-11 * kmax) {
            keep.push_back(i);
        }
    }
    int rank = (int)keep.size();
    Mat p(r.rows(), rank);
    Eigen::VectorXd sq(rank);
    for (int c = 0; c < rank; c++) {
        p.col(c) = es.eigenvectors().col(keep[c]);
        sq(c) = std::sqrt(kappa(keep[c]));
    }
    std::vector<Mat> kraus;
    double scale = 1.0 / std::sqrt(lam);
    for (const Mat &b : rt.junk) {
        Mat t = p.adjoint() * b * p;
        kraus.push_back(scale * (sq.asDiagonal() * t * sq.cwiseInverse().asDiagonal()));
    }
    // Refinement against rounding in the fixed point.
    auto [y, lam2] = dual_fixed_point(kraus);
    y *= (double)rank;
    Mat ys = sqrt_psd(y);
    Mat ysi = ys.inverse();
    for (Mat &b : kraus) {
        b = (ys * b * ysi) / std::sqrt(lam2);
    }
    BlockChannel ch = from_kraus(rt.n, std::move(kraus));
    if (ch.trace_preservation_error() > 1e-10) {
        throw NumericalError("canonical junk matrices are not trace preserving");
    }
    ch.spectral();
    return ch;
}

Mat BlockChannel::apply_ring(const Mat &tau) const {
    Mat out = Mat::Zero(junk_dim_, junk_dim_);
    for (const Mat &b : kraus_) {
        out.noalias() += b * tau * b.adjoint();
    }
    return out;
}

Mat BlockChannel::apply_block(const Mat &tau) const {
    Mat out = tau;
    for (int t = 0; t < n_; t++) {
        out = apply_ring(out);
    }
    return out;
}

double BlockChannel::trace_preservation_error() const {
    Mat s = Mat::Zero(junk_dim_, junk_dim_);
    for (const Mat &b : kraus_) {
        s.noalias() += b.adjoint() * b;
    }
    return (s - Mat::Identity(junk_dim_, junk_dim_)).norm();
}

const FixedPoint &BlockChannel::spectral() const {
    if (!spectral_) {
        spectral_ = std::make_shared<FixedPoint>(fixed_point(*this));
    }
    return *spectral_;
}

FixedPoint fixed_point(const BlockChannel &ch) {
    int D = ch.junk_dim();
    FixedPoint fp;
    if (D == 1) {
        fp.rho_fix = Mat::Identity(1, 1);
        return fp;
    }
    Mat x = Mat::Identity(D, D) / (double)D;
    bool converged = false;
    for (int it = 0; it < 20000 && !converged; it++) {
        Mat y = ch.apply_block(x);
        cplx tr = y.trace();
        if (std::abs(tr) < 1e-300) {
            throw NumericalError("block channel annihilated the state");
        }
        y /= tr;
        converged = (y - x).norm() < 1e-14;
        x = y;
    }
    if (!converged) {
        throw NotInjective("block channel has no attracting fixed point");
    }
    fp.rho_fix = hermitian_part(x) / x.trace().real();
    // Deflated power iteration for the subleading modulus.
    Rng rng(0x1a2b3c);
    Mat z(D, D);
    for (int i = 0; i < D; i++) {
        for (int j = 0; j < D; j++) {
            z(i, j) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
        }
    }
    z = hermitian_part(z);
    z -= z.trace() * fp.rho_fix;
    z /= z.norm();
    const int iters = 400;
    double log_sum = 0;
    int counted = 0;
    fp.lambda1 = -1;
    for (int k = 1; k <= iters; k++) {
        Mat w = ch.apply_block(z);
        w -= w.trace() * fp.rho_fix;
        double nrm = w.norm();
        if (nrm < 1e-13) {
            fp.lambda1 = 0;
            break;
        }
        if (k > iters / 2) {
            log_sum += std::log(nrm);
            counted++;
        }
        z = w / nrm;
    }
    if (fp.lambda1 < 0) {
        fp.lambda1 = std::exp(log_sum / counted);
    }
    if (fp.lambda1 > 1 - 1e-10) {
        throw NotInjective("leading eigenvalue of the block channel is degenerate");
    }
    fp.xi = fp.lambda1 > 0 ? -1.0 / std::log(fp.lambda1) : 0.0;
    return fp;
}

std::vector<cplx> block_spectrum(const BlockChannel &ch) {
    int D = ch.junk_dim();
    Mat s = Mat::Identity(D * D, D * D);
    for (int t = 0; t < ch.n(); t++) {
        s = ch.ring_superop() * s;
    }
    Eigen::ComplexEigenSolver<Mat> es(s, false);
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    return ev;
}

VirtualState VirtualState::product(const Mat &logical, const Mat &junk) {
    int L = (int)logical.rows();
    if (L < 2 || (L & (L - 1)) || logical.cols() != L || junk.rows() != junk.cols()) {
        throw ShapeError("logical state must be 2^n square");
    }
    VirtualState s;
    s.n = std::countr_zero((unsigned)L);
    s.junk_dim = (int)junk.rows();
    s.rho = kron(logical, junk);
    s.frame = RingPauli(s.n);
    return s;
}

Mat VirtualState::logical() const {
    int L = 1 << n;
    Mat out(L, L);
    for (int l = 0; l < L; l++) {
        for (int lp = 0; lp < L; lp++) {
            out(l, lp) = rho.block(l * junk_dim, lp * junk_dim, junk_dim, junk_dim).trace();
        }
    }
    return out;
}

Mat VirtualState::junk() const {
    int L = 1 << n;
    Mat out = Mat::Zero(junk_dim, junk_dim);
    for (int l = 0; l < L; l++) {
        out += rho.block(l * junk_dim, l * junk_dim, junk_dim, junk_dim);
    }
    return out;
}

void shift_into_frame(VirtualState &state, const RingPauli &p) {
    if ((int)p.size() != state.n) {
        throw ShapeError("Pauli size does not match the ring");
    }
    state.rho = pauli_right_dagger(pauli_left(p, state.rho, state.junk_dim), p, state.junk_dim);
    state.frame = state.frame * p;
}

VirtualState oblivious_wire(const BlockChannel &ch, VirtualState state, int blocks) {
    if (blocks < 0) {
        throw DomainError("wire length must be non-negative");
    }
    if (ch.junk_dim() == 1) {
        return state;
    }
    int D = ch.junk_dim();
    const Mat &block = ch.block_superop();
    Mat r = gather(state.rho, D);
    for (int b = 0; b < blocks; b++) {
        if (block.size()) {
            r = block * r;
        } else {
            for (int t = 0; t < ch.n(); t++) {
                r = ch.ring_superop() * r;
            }
        }
    }
    state.rho = scatter(r, D);
    return state;
}

std::array<std::array<cplx, 2>, 2> basis_coefficients(const SiteBasis &b) {
    std::array<std::array<cplx, 2>, 2> c{};
    switch (b.kind) {
        case BasisKind::SymX:
            c[0] = {1.0, 0.0};
            c[1] = {0.0, 1.0};
            break;
        case BasisKind::Tilted: {
            double co = std::cos(b.dalpha);
            double si = std::sin(b.dalpha);
            c[0] = {co, std::polar(si, -b.delta)};
            c[1] = {-std::polar(si, b.delta), co};
            break;
        }
        case BasisKind::Hadamard01: {
            double h = std::sqrt(0.5);
            c[0] = {h, h};
            c[1] = {h, -h};
            break;
        }
    }
    return c;
}

MeasurementPattern::MeasurementPattern(int n) : n_(n), sites_((size_t)n * n) {
    if (n < 1) {
        throw DomainError("ring size must be positive");
    }
}

MeasurementPattern MeasurementPattern::wire(int n) {
    return MeasurementPattern(n);
}

MeasurementPattern MeasurementPattern::tilted(int n, int m, int l, double dalpha, double delta) {
    MeasurementPattern p(n);
    p.at(m, l) = {BasisKind::Tilted, dalpha, delta};
    return p;
}

MeasurementPattern MeasurementPattern::hadamard01(int n, int m, int l) {
    MeasurementPattern p(n);
    p.at(m, l) = {BasisKind::Hadamard01, 0, 0};
    return p;
}

MeasurementPattern MeasurementPattern::z_init(int n) {
    MeasurementPattern p(n);
    for (int l = 0; l < n; l++) {
        p.at(1, l) = {BasisKind::Hadamard01, 0, 0};
    }
    return p;
}

MeasurementPattern MeasurementPattern::x_init(int n) {
    MeasurementPattern p(n);
    for (int l = 0; l < n; l++) {
        p.at(n, l) = {BasisKind::Hadamard01, 0, 0};
    }
    return p;
}

const SiteBasis &MeasurementPattern::at(int m, int l) const {
    if (m < 1 || m > n_ || l < 0 || l >= n_) {
        throw DomainError("pattern site out of range");
    }
    return sites_[(size_t)(m - 1) * n_ + l];
}

SiteBasis &MeasurementPattern::at(int m, int l) {
    return const_cast<SiteBasis &>(std::as_const(*this).at(m, l));
}

std::vector<std::pair<int, int>> MeasurementPattern::specials() const {
    std::vector<std::pair<int, int>> out;
    for (int m = 1; m <= n_; m++) {
        for (int l = 0; l < n_; l++) {
            if (at(m, l).kind != BasisKind::SymX) {
                out.push_back({m, l});
            }
        }
    }
    return out;
}

void MeasurementPattern::validate() const {
    auto sp = specials();
    if (sp.size() <= 1) {
        return;
    }
    for (auto [m, l] : sp) {
        if (m != sp[0].first || at(m, l).kind != BasisKind::Hadamard01) {
            throw PreconditionError("a block holds at most one non-SymX site");
        }
    }
}

PatternOutcome apply_pattern(const BlockChannel &ch, VirtualState &state, const MeasurementPattern &pat, Rng &rng,
                             bool adaptive) {
    pat.validate();
    check_block_aligned(state, pat);
    check_period(pat.n());
    int n = pat.n();
    int D = ch.junk_dim();
    QcaStep step(n);
    PatternOutcome res;
    res.outcomes.assign((size_t)n * n, 0);
    RingPauli start_frame = state.frame;
    Tableau block = Tableau::from_pauli(RingPauli(n));
    // Runs of all-SymX rings only touch the junk: outcomes follow the junk marginal, and the
    // accumulated Kraus product is applied to the full state once.
    bool pending_active = false;
    Mat pending;
    Mat rj;
    auto flush = [&]() {
        if (pending_active) {
            Mat r = junk_sandwich(pending, state.rho, pending);
            state.rho = r / r.trace().real();
            pending_active = false;
        }
    };
    for (int m = 1; m <= n; m++) {
        RingSpecials rs = ring_specials(pat, m);
        uint64_t nominal_bits = 0;
        std::vector<int> eps;
        if (rs.rows.empty()) {
            if (!pending_active) {
                rj = state.junk();
                pending = Mat::Identity(D, D);
                pending_active = true;
            }
            std::vector<double> p(ch.kraus().size());
            double total = 0;
            for (size_t i = 0; i < p.size(); i++) {
                const Mat &b = ch.kraus()[i];
                p[i] = std::max(0.0, (b * rj * b.adjoint()).trace().real());
                total += p[i];
            }
            if (std::abs(total - 1) > 1e-10) {
                throw NumericalError("Born probabilities do not sum to one");
            }
            double u = rng.uniform() * total;
            size_t pick = p.size() - 1;
            for (size_t i = 0; i < p.size(); i++) {
                if (u < p[i]) {
                    pick = i;
                    break;
                }
                u -= p[i];
            }
            const Mat &b = ch.kraus()[pick];
            rj = b * rj * b.adjoint() / p[pick];
            pending = b * pending;
            nominal_bits = pick;
            for (int l = 0; l < n; l++) {
                res.outcomes[(size_t)(m - 1) * n + l] = bit(pick, l);
            }
        } else {
            flush();
            std::vector<PauliOperator> gens;
            for (size_t s = 0; s < rs.rows.size(); s++) {
                int row = rs.rows[s];
                int e = commutes(state.frame, RingPauli::single(n, row, 'Z'));
                eps.push_back(e);
                RingPauli g = tilt_generator(n, m, row);
                if (e < 0) {
                    g.set_phase_exponent(g.phase_exponent() + 2);
                }
                gens.push_back(g);
                if (adaptive && rs.bases[s].kind == BasisKind::Tilted) {
                    rs.bases[s].dalpha *= e;
                }
            }
            auto branches = ring_branches(ch, state.rho, rs.rows, rs.bases, gens, false);
            double total = 0;
            std::vector<double> p(branches.size());
            for (size_t i = 0; i < branches.size(); i++) {
                p[i] = std::max(0.0, branches[i].rho.trace().real());
                total += p[i];
            }
            if (std::abs(total - 1) > 1e-10) {
                throw NumericalError("Born probabilities do not sum to one");
            }
            double u = rng.uniform() * total;
            size_t pick = p.size() - 1;
            for (size_t i = 0; i < p.size(); i++) {
                if (u < p[i]) {
                    pick = i;
                    break;
                }
                u -= p[i];
            }
            const Branch &br = branches[pick];
            state.rho = br.rho / p[pick];
            nominal_bits = br.others;
            for (int l = 0; l < n; l++) {
                res.outcomes[(size_t)(m - 1) * n + l] = bit(br.others, l);
            }
            for (size_t s = 0; s < rs.rows.size(); s++) {
                int row = rs.rows[s];
                bool o = bit(br.outcome, (int)s);
                res.outcomes[(size_t)(m - 1) * n + row] = o;
                if (rs.bases[s].kind == BasisKind::Hadamard01) {
                    int logical = (int)o ^ (eps[s] < 0 ? 1 : 0);
                    res.logical_z.push_back(logical);
                    double p0 = 0;
                    for (size_t i = 0; i < branches.size(); i++) {
                        bool oi = bit(branches[i].outcome, (int)s);
                        if (((int)oi ^ (eps[s] < 0 ? 1 : 0)) == 0) {
                            p0 += p[i];
                        }
                    }
                    res.prob_zero.push_back(p0 / total);
                } else if (o) {
                    nominal_bits |= uint64_t{1} << row;
                }
            }
        }
        BitVector nb = bits_of(n, nominal_bits);
        state.frame = advance_frame(step, state.frame, nb);
        block = block.then(step.component(nb));
        state.ring_phase = (state.ring_phase + 1) % n;
    }
    flush();
    auto pauli = block.as_pauli();
    if (!pauli || !state.frame.same_support_as(*pauli * start_frame)) {
        throw InternalError("block byproduct is not the tracked Pauli frame");
    }
    res.frame = state.frame;
    return res;
}

PatternOutcome apply_pattern_channel(const BlockChannel &ch, VirtualState &state, const MeasurementPattern &pat,
                                     Rng &rng, bool selective) {
    pat.validate();
    check_block_aligned(state, pat);
    check_period(pat.n());
    int n = pat.n();
    int D = ch.junk_dim();
    PatternOutcome res;
    res.outcomes.assign((size_t)n * n, 0);
    for (int m = 1; m <= n; m++) {
        RingSpecials rs = ring_specials(pat, m);
        if (rs.rows.empty()) {
            if (D > 1) {
                state.rho = superop_apply(ch.ring_superop(), state.rho, D);
            }
            continue;
        }
        std::vector<PauliOperator> gens;
        for (int row : rs.rows) {
            gens.push_back(tilt_generator(n, m, row));
        }
        auto branches = ring_branches(ch, state.rho, rs.rows, rs.bases, gens, true);
        // Group by the Hadamard01 outcomes; all other special outcomes are averaged.
        uint64_t hmask = 0;
        std::vector<size_t> hpos;
        for (size_t s = 0; s < rs.rows.size(); s++) {
            if (rs.bases[s].kind == BasisKind::Hadamard01) {
                hmask |= uint64_t{1} << s;
                hpos.push_back(s);
            }
        }
        std::map<uint64_t, Mat> groups;
        double total = 0;
        for (auto &br : branches) {
            uint64_t key = selective ? (br.outcome & hmask) : 0;
            auto it = groups.find(key);
            if (it == groups.end()) {
                groups.emplace(key, br.rho);
            } else {
                it->second += br.rho;
            }
            total += br.rho.trace().real();
        }
        if (std::abs(total - 1) > 1e-10) {
            throw NumericalError("Born probabilities do not sum to one");
        }
        for (size_t h : hpos) {
            double p0 = 0;
            for (auto &br : branches) {
                if (!bit(br.outcome, (int)h)) {
                    p0 += br.rho.trace().real();
                }
            }
            res.prob_zero.push_back(p0 / total);
        }
        if (!selective || hpos.empty()) {
            Mat sum = Mat::Zero(state.rho.rows(), state.rho.cols());
            for (auto &[k, g] : groups) {
                sum += g;
            }
            state.rho = sum / total;
            for (size_t i = 0; i < hpos.size(); i++) {
                res.logical_z.push_back(-1);
            }
            continue;
        }
        double u = rng.uniform() * total;
        auto pick = std::prev(groups.end());
        for (auto it = groups.begin(); it != groups.end(); ++it) {
            double p = it->second.trace().real();
            if (u < p) {
                pick = it;
                break;
            }
            u -= p;
        }
        state.rho = pick->second / pick->second.trace().real();
        for (size_t h : hpos) {
            int o = bit(pick->first, (int)h);
            res.logical_z.push_back(o);
            res.outcomes[(size_t)(m - 1) * n + rs.rows[h]] = o;
        }
    }
    res.frame = state.frame;
    return res;
}

cplx compute_nu(const BlockChannel &ch, int k) {
    int n = ch.n();
    if (k < 0 || k >= n) {
        throw DomainError("site index out of range");
    }
    const FixedPoint &fp = ch.spectral();
    int D = ch.junk_dim();
    Mat x = Mat::Zero(D, D);
    uint64_t kb = uint64_t{1} << k;
    for (uint64_t i = 0; i < ch.kraus().size(); i++) {
        if (i & kb) {
            continue;
        }
        x.noalias() += ch.kraus()[i | kb] * fp.rho_fix * ch.kraus()[i].adjoint();
    }
    cplx nu = x.trace();
    int limit = 100 + (int)std::ceil(10 * fp.xi) * n;
    for (int it = 0; it <= limit; it++) {
        double r = (x - x.trace() * fp.rho_fix).norm();
        if (r <= 1e-9 * std::max(std::abs(x.trace()), 1e-3)) {
            return x.trace();
        }
        x = ch.apply_ring(x);
    }
    (void)nu;
    throw NumericalError("deviation map did not converge to the fixed point");
}

cplx compute_nu(const RingTensor &rt, int k) {
    return compute_nu(BlockChannel::from_ring_tensor(rt), k);
}

RingPauli tilt_generator(int n, int m, int l) {
    if (m < 1 || m > n) {
        throw UnsupportedGenerator("tilt column must lie in 1..n");
    }
    if (l < 0 || l >= n) {
        throw DomainError("row out of range");
    }
    QcaStep step(n);
    return step.conjugate_power(RingPauli::single(n, l, 'Z'), -(m - 1));
}

RingPauli tilt_partner(int n, int m, int l) {
    tilt_generator(n, m, l);
    QcaStep step(n);
    return step.conjugate_power(RingPauli::single(n, l, 'X'), -(m - 1));
}

Mat LogicalRotation::unitary() const {
    return exp_i_pauli(angle, generator);
}

LogicalRotation expected_rotation(int n, double dalpha, double delta, int m, int l, cplx nu) {
    if (std::abs(dalpha) > 0.1) {
        throw DomainError("tilt angle exceeds 0.1");
    }
    LogicalRotation r;
    r.generator = tilt_generator(n, m, l);
    r.angle = 2 * (std::polar(1.0, -delta) * nu).imag() * dalpha;
    r.validated = m == 1 || m == 2 || m == n;
    return r;
}

double calibrated_delta(cplx nu) {
    return std::arg(nu) - std::numbers::pi / 2;
}

Mat single_slice_logical(const BlockChannel &ch, const Mat &logical, int m, int l, double dalpha, double delta,
                         int wire_blocks) {
    VirtualState s = VirtualState::product(logical, ch.spectral().rho_fix);
    Rng rng(0);
    apply_pattern_channel(ch, s, MeasurementPattern::tilted(ch.n(), m, l, dalpha, delta), rng);
    s = oblivious_wire(ch, s, wire_blocks);
    return s.logical();
}

ResourceCalibration calibrate(const BlockChannel &ch) {
    ResourceCalibration c;
    const FixedPoint &fp = ch.spectral();
    c.nu = compute_nu(ch, 0);
    c.nu_abs = std::abs(c.nu);
    c.nu_arg = std::arg(c.nu);
    c.delta = calibrated_delta(c.nu);
    c.xi = fp.xi;
    c.lambda1 = fp.lambda1;
    c.junk_dim = ch.junk_dim();
    int n = ch.n();
    double da = 0.02;
    LogicalRotation rot = expected_rotation(n, da, c.delta, 1, 0, c.nu);
    Mat u = rot.unitary();
    size_t L = size_t{1} << n;
    double worst = 0;
    for (int kind = 0; kind < 3; kind++) {
        Vec psi = Vec::Zero(L);
        psi(0) = 1;
        if (kind == 1) {
            psi(1) = 1;
        } else if (kind == 2) {
            psi(1) = cplx(0, 1);
        }
        psi.normalize();
        Mat sigma = psi * psi.adjoint();
        Mat out = single_slice_logical(ch, sigma, 1, 0, da, c.delta, 2);
        worst = std::max(worst, trace_norm(out - u * sigma * u.adjoint()));
    }
    c.slice_error_coeff = worst / (da * da);
    return c;
}

}  // namespace cpl
