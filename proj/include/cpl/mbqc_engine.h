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

#ifndef CPL_MBQC_ENGINE_H
#define CPL_MBQC_ENGINE_H

#include <array>
#include <memory>
#include <vector>

#include "cpl/dense.h"
#include "cpl/qca.h"
#include "cpl/rng.h"
#include "cpl/tensors.h"

namespace cpl {

struct FixedPoint {
    Mat rho_fix;
    /// Second-largest eigenvalue modulus of the block channel; 0 when it vanishes.
    double lambda1 = 0;
    double xi = 0;
};

/// Transfer channel of one ring, L(X) = sum_i B(i) X B(i)^dagger, and its n-fold block power.
class BlockChannel {
   public:
    /// Brings the junk matrices to a trace-preserving gauge on the support of the
    /// right fixed point and caches the spectral data.
    static BlockChannel from_ring_tensor(const RingTensor &rt);
    /// Uses the given ring Kraus operators as they are (one per ring configuration).
    static BlockChannel from_kraus(int n, std::vector<Mat> kraus);

    int n() const {
        return n_;
    }
    int junk_dim() const {
        return junk_dim_;
    }
    const std::vector<Mat> &kraus() const {
        return kraus_;
    }
    const Mat &ring_superop() const {
        return ring_superop_;
    }
    Mat apply_ring(const Mat &tau) const;
    Mat apply_block(const Mat &tau) const;
    /// || sum B^dagger B - I ||.
    double trace_preservation_error() const;
    /// Cached spectral data; computed on first use.
    const FixedPoint &spectral() const;
    /// Superoperator of X -> sum B(a, o) X B(b, o)^dagger over the configurations o of the rows
    /// outside `mask`, with a and b the bits on the rows in `mask` (cached).
    const Mat &pair_superop(uint64_t mask, uint64_t a, uint64_t b) const;
    /// Superoperator of one block for junk dimension at most 16, empty otherwise (cached).
    const Mat &block_superop() const;

   private:
    struct Cache;
    int n_ = 0;
    int junk_dim_ = 0;
    std::vector<Mat> kraus_;
    Mat ring_superop_;
    mutable std::shared_ptr<FixedPoint> spectral_;
    std::shared_ptr<Cache> cache_;
};

/// Unit-trace fixed point, lambda1 and xi = -1/ln(lambda1). Throws NotInjective on a degenerate leading eigenvalue.
FixedPoint fixed_point(const BlockChannel &ch);

/// All eigenvalues of the block channel's matrix, sorted by decreasing modulus.
std::vector<cplx> block_spectrum(const BlockChannel &ch);

struct VirtualState {
    int n = 0;
    int junk_dim = 1;
    /// Density matrix on (logical 2^n) (x) (junk), logical index major.
    Mat rho;
    /// Pauli frame F: the physical logical state is F C^t sigma C^-t F^dagger.
    RingPauli frame;
    /// Number of rings processed, mod n.
    int ring_phase = 0;

    static VirtualState product(const Mat &logical, const Mat &junk);
    Mat logical() const;
    Mat junk() const;
};

/// Moves the Pauli p from the logical state into the frame: sigma -> p sigma p^dagger, F -> F p.
/// The physical state is unchanged.
void shift_into_frame(VirtualState &state, const RingPauli &p);

/// Applies `blocks` all-SymX blocks with forgotten outcomes.
VirtualState oblivious_wire(const BlockChannel &ch, VirtualState state, int blocks);

enum class BasisKind { SymX, Tilted, Hadamard01 };

struct SiteBasis {
    BasisKind kind = BasisKind::SymX;
    double dalpha = 0;
    double delta = 0;
};

/// c[o][a] = <o|a> with |o> the measurement basis vector and a = 0, 1 the X-basis states +, -.
std::array<std::array<cplx, 2>, 2> basis_coefficients(const SiteBasis &b);

/// Per-site bases of one block: column m = 1..n (ring within the block), row l = 0..n-1.
class MeasurementPattern {
   public:
    explicit MeasurementPattern(int n);
    static MeasurementPattern wire(int n);
    static MeasurementPattern tilted(int n, int m, int l, double dalpha, double delta);
    static MeasurementPattern hadamard01(int n, int m, int l);
    /// Hadamard01 on every row of column 1: weak measurement of every Z_l.
    static MeasurementPattern z_init(int n);
    /// Hadamard01 on every row of column n: weak measurement of every X_l.
    static MeasurementPattern x_init(int n);

    int n() const {
        return n_;
    }
    const SiteBasis &at(int m, int l) const;
    SiteBasis &at(int m, int l);
    /// (m, l) of every non-SymX site.
    std::vector<std::pair<int, int>> specials() const;
    /// At most one special site, or only Hadamard01 sites within one column.
    void validate() const;

   private:
    int n_;
    std::vector<SiteBasis> sites_;
};

struct PatternOutcome {
    /// Physical outcome per site, index (m-1)*n + l. Averaged sites hold 0.
    std::vector<uint8_t> outcomes;
    /// Logical Z outcome per Hadamard01 site in specials() order; -1 when averaged.
    std::vector<int> logical_z;
    /// Probability of logical outcome 0 per Hadamard01 site.
    std::vector<double> prob_zero;
    /// Frame after the block.
    RingPauli frame;
};

/// Samples every outcome with Born probabilities and tracks the Pauli frame. With `adaptive`,
/// tilt signs are flipped when the frame anticommutes with the special site's Z.
PatternOutcome apply_pattern(const BlockChannel &ch, VirtualState &state, const MeasurementPattern &pat, Rng &rng,
                             bool adaptive = true);

/// Averages over the X outcomes and tilted outcomes. Hadamard01 outcomes are sampled when
/// `selective`, otherwise averaged.
PatternOutcome apply_pattern_channel(const BlockChannel &ch, VirtualState &state, const MeasurementPattern &pat,
                                     Rng &rng, bool selective = true);

/// nu for site k: tr of the deviation map applied to rho_fix, after iterating the ring channel
/// until proportional to rho_fix.
cplx compute_nu(const BlockChannel &ch, int k);
cplx compute_nu(const RingTensor &rt, int k);

/// Generator of a tilt at block column m and row l: the (m-1)-fold inverse QCA image of Z_l.
RingPauli tilt_generator(int n, int m, int l);
/// Pauli anticommuting with tilt_generator(n, m, l) and commuting with the generators of the
/// other rows in column m: the (m-1)-fold inverse image of X_l.
RingPauli tilt_partner(int n, int m, int l);

struct LogicalRotation {
    RingPauli generator;
    double angle;
    /// m in {1, 2, n}, the columns with closed-form generators.
    bool validated;

    /// exp(i angle generator).
    Mat unitary() const;
};

/// exp(2i Im(e^{-i delta} nu) dalpha G); equals exp(2i|nu| dalpha G) for delta = arg(nu) - pi/2.
LogicalRotation expected_rotation(int n, double dalpha, double delta, int m, int l, cplx nu);

/// delta that turns the tilt into a pure rotation.
double calibrated_delta(cplx nu);

struct ResourceCalibration {
    cplx nu;
    double nu_abs;
    double nu_arg;
    double delta;
    double xi;
    double lambda1;
    int junk_dim;
    /// Single-slice trace-norm deviation from the ideal rotation divided by dalpha^2.
    double slice_error_coeff;
};

ResourceCalibration calibrate(const BlockChannel &ch);

/// Channel on the logical space of one tilted block at (m, l) followed by `wire_blocks` wire blocks,
/// starting from logical (x) rho_fix.
Mat single_slice_logical(const BlockChannel &ch, const Mat &logical, int m, int l, double dalpha, double delta,
                         int wire_blocks);

}  // namespace cpl

#endif
