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

#include "cpl/dense.h"

#include "cpl/errors.h"

namespace cpl {

Mat pauli_matrix(const PauliOperator &p) {
    size_t n = p.size();
    if (n > 14) {
        throw DomainError("dense Pauli matrices are limited to 14 qubits");
    }
    size_t dim = size_t{1} << n;
    uint64_t xm = n ? p.xs().word(0) : 0;
    uint64_t zm = n ? p.zs().word(0) : 0;
    Mat m = Mat::Zero(dim, dim);
    cplx ph = p.phase();
    for (size_t b = 0; b < dim; b++) {
        double s = std::popcount(zm & b) & 1 ? -1.0 : 1.0;
        m(b ^ xm, b) = ph * s;
    }
    return m;
}

Vec apply_pauli(const PauliOperator &p, const Vec &v) {
    size_t n = p.size();
    if (n > 30 || (size_t)v.size() != (size_t{1} << n)) {
        throw ShapeError("vector length does not match Pauli size");
    }
    uint64_t xm = n ? p.xs().word(0) : 0;
    uint64_t zm = n ? p.zs().word(0) : 0;
    cplx ph = p.phase();
    Vec out(v.size());
    for (size_t b = 0; b < (size_t)v.size(); b++) {
        double s = std::popcount(zm & b) & 1 ? -1.0 : 1.0;
        out(b ^ xm) = ph * s * v(b);
    }
    return out;
}

Mat exp_i_pauli(double beta, const PauliOperator &p) {
    size_t dim = size_t{1} << p.size();
    return std::cos(beta) * Mat::Identity(dim, dim) + cplx(0, std::sin(beta)) * pauli_matrix(p);
}

Mat hadamard_all_matrix(int n) {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < n; k++) {
        out = kron(h, out);
    }
    return out;
}

Vec hadamard_all_apply(const Vec &v) {
    Vec out = v;
    size_t dim = (size_t)v.size();
    if (dim & (dim - 1)) {
        throw ShapeError("vector length is not a power of two");
    }
    for (size_t h = 1; h < dim; h <<= 1) {
        for (size_t i = 0; i < dim; i += 2 * h) {
            for (size_t j = i; j < i + h; j++) {
                cplx a = out(j);
                cplx b = out(j + h);
                out(j) = a + b;
                out(j + h) = a - b;
            }
        }
        out /= std::sqrt(2.0);
    }
    return out;
}

Mat cz_ring_matrix(int n) {
    size_t dim = size_t{1} << n;
    Mat m = Mat::Zero(dim, dim);
    for (size_t b = 0; b < dim; b++) {
        int par = 0;
        for (int k = 0; k < n; k++) {
            par ^= ((b >> k) & 1) & ((b >> ((k + 1) % n)) & 1);
        }
        m(b, b) = par ? -1.0 : 1.0;
    }
    return m;
}

Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double distance_up_to_phase(const Mat &a, const Mat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("matrix shapes differ");
    }
    Eigen::Index bi = 0, bj = 0;
    a.cwiseAbs().maxCoeff(&bi, &bj);
    cplx ratio = b(bi, bj) == cplx(0) ? cplx(1) : a(bi, bj) / b(bi, bj);
    ratio /= std::abs(ratio);
    return (a - ratio * b).norm() / a.norm();
}

Mat sqrt_psd(const Mat &m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity(const Mat &rho, const Mat &sigma) {
    Mat s = sqrt_psd(rho);
    Mat inner = s * sigma * s;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (inner + inner.adjoint()));
    double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return t * t;
}

double trace_norm(const Mat &m) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().sum();
}

double trace_distance(const Mat &a, const Mat &b) {
    return 0.5 * trace_norm(a - b);
}

Mat partial_trace_qubits(const Mat &rho, int n, const std::vector<int> &keep) {
    size_t dim = size_t{1} << n;
    if ((size_t)rho.rows() != dim || (size_t)rho.cols() != dim) {
        throw ShapeError("density matrix dimension does not match qubit count");
    }
    size_t kd = size_t{1} << keep.size();
    uint64_t keep_mask = 0;
    for (int q : keep) {
        keep_mask |= uint64_t{1} << q;
    }
    auto reduce = [&](size_t b) {
        size_t r = 0;
        for (size_t i = 0; i < keep.size(); i++) {
            r |= ((b >> keep[i]) & 1) << i;
        }
        return r;
    };
    Mat out = Mat::Zero(kd, kd);
    for (size_t a = 0; a < dim; a++) {
        for (size_t b = 0; b < dim; b++) {
            if ((a & ~keep_mask) == (b & ~keep_mask)) {
                out(reduce(a), reduce(b)) += rho(a, b);
            }
        }
    }
    return out;
}

}  // namespace cpl
