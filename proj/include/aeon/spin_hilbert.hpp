// Copyright 2026 The AEON Simulator Authors
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

// Exact quantum mechanics of three exchange-coupled spin-1/2 particles.
//
// Product basis |s1 s2 s3>, dot 1 is the most significant bit and spin-up is
// bit value 0, so index 0 is |uuu> and index 7 is |ddd>. All frequencies are
// ordinary frequencies in Hz; the factor 2*pi is applied exactly once, inside
// build_hamiltonian (and qubit_block), which yields angular frequencies so that
// propagators are exp(-i H t) with t in seconds.

#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "aeon/errors.hpp"
#include "aeon/linalg.hpp"

namespace aeon {

/// Bohr magneton over Planck constant, Hz/T.
inline constexpr double kBohrMagnetonHzPerTesla = 1.39962449361e10;
/// Electron g-factor used to convert tesla to Hz.
inline constexpr double kElectronGFactor = 2.0;

inline constexpr std::array<const char *, 8> kProductBasisLabels = {
    "uuu", "uud", "udu", "udd", "duu", "dud", "ddu", "ddd"};

/// Pairwise exchange frequencies in Hz.
struct ExchangeVector {
    double j12 = 0.0;
    double j23 = 0.0;
    double j13 = 0.0;

    double j_plus() const { return 0.5 * (j12 + j23); }
    double j_minus() const { return 0.5 * (j12 - j23); }

    void validate() const {
        for (double v : {j12, j23, j13}) {
            if (!std::isfinite(v)) throw InvalidArgument("ExchangeVector: non-finite component");
            if (v < 0.0) throw InvalidArgument("ExchangeVector: negative exchange");
        }
    }

    friend bool operator==(const ExchangeVector &, const ExchangeVector &) = default;
};

/// Global Zeeman field (tesla) and per-dot longitudinal offsets (Hz).
struct FieldConfig {
    double global_b = 0.0;
    std::array<double, 3> gradients{0.0, 0.0, 0.0};

    double zeeman_hz() const {
        return kElectronGFactor * kBohrMagnetonHzPerTesla * global_b;
    }

    void validate() const {
        if (!std::isfinite(global_b) || global_b < 0.0)
            throw InvalidArgument("FieldConfig: global_b must be finite and >= 0");
        for (double g : gradients)
            if (!std::isfinite(g)) throw InvalidArgument("FieldConfig: non-finite gradient");
    }
};

struct Hamiltonian8 {
    Matrix8c m = Matrix8c::Zero();

    /// Wraps an arbitrary matrix after checking Hermiticity (1e-12 relative).
    static Hamiltonian8 from_matrix(const Matrix8c &m) {
        if (hermiticity_defect(m) > 1e-12)
            throw ContractError("Hamiltonian8: matrix is not Hermitian");
        return Hamiltonian8{m};
    }
};

class DensityMatrix8 {
  public:
    DensityMatrix8() : m_(Matrix8c::Identity() / 8.0) {}

    /// Checked construction: Hermitian, unit trace, PSD within 1e-10.
    static DensityMatrix8 from_matrix(const Matrix8c &m) {
        DensityMatrix8 r;
        r.m_ = m;
        r.validate();
        return r;
    }

    static DensityMatrix8 maximally_mixed() { return DensityMatrix8{}; }

    const Matrix8c &matrix() const { return m_; }

    double trace() const { return m_.trace().real(); }

    void validate(double tol = 1e-10) const {
        if (hermiticity_defect(m_) > tol) throw ContractError("DensityMatrix8: not Hermitian");
        if (std::abs(m_.trace() - cplx(1.0)) > tol)
            throw ContractError("DensityMatrix8: trace != 1");
        Eigen::SelfAdjointEigenSolver<Matrix8c> es(0.5 * (m_ + m_.adjoint()),
                                                  Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol)
            throw ContractError("DensityMatrix8: not positive semidefinite");
    }

    // Unchecked; for evolution internals that preserve the invariants.
    static DensityMatrix8 unchecked(Matrix8c m) {
        DensityMatrix8 r;
        r.m_ = std::move(m);
        return r;
    }

  private:
    Matrix8c m_;
};

/// Encoded qubit vectors and the projectors onto qubit and leakage subspaces.
/// Gauge index 0 is m_S = +1/2, index 1 is m_S = -1/2.
struct EncodedBasis {
    std::array<Vector8c, 2> zero;  // |0, m_S>: singlet of dots 1 and 3
    std::array<Vector8c, 2> one;   // |1, m_S>: S13 = 1 coupled to S = 1/2
    std::array<Vector8c, 4> leak;  // |3/2, m_S>, m_S = +3/2 ... -3/2
    Matrix8c p0;
    Matrix8c p1;
    Matrix8c p_leak;
};

namespace detail {

inline int spin_bit(int index, int dot) { return (index >> (2 - dot)) & 1; }

inline Vector8c basis_ket(int index) {
    Vector8c v = Vector8c::Zero();
    v(index) = 1.0;
    return v;
}

// Ket from a spin pattern string like "udu" (dot 1 first).
inline Vector8c ket(const char *pattern) {
    int index = 0;
    for (int d = 0; d < 3; ++d) index = (index << 1) | (pattern[d] == 'd' ? 1 : 0);
    return basis_ket(index);
}

// S_i . S_j = SWAP_ij / 2 - 1/4.
inline Matrix8c spin_dot(int a, int b) {
    Matrix8c m = Matrix8c::Zero();
    for (int idx = 0; idx < 8; ++idx) {
        const int ba = spin_bit(idx, a);
        const int bb = spin_bit(idx, b);
        int swapped = idx;
        if (ba != bb) swapped ^= (1 << (2 - a)) | (1 << (2 - b));
        m(swapped, idx) += 0.5;
        m(idx, idx) -= 0.25;
    }
    return m;
}

inline Matrix8c spin_z(int dot) {
    Matrix8c m = Matrix8c::Zero();
    for (int idx = 0; idx < 8; ++idx) m(idx, idx) = spin_bit(idx, dot) ? -0.5 : 0.5;
    return m;
}

inline EncodedBasis make_encoded_basis() {
    EncodedBasis b;
    const double r2 = std::sqrt(2.0);
    const double r3 = std::sqrt(3.0);
    const double r6 = std::sqrt(6.0);
    // m_S = +1/2: dot 2 up in |0>.
    b.zero[0] = (ket("uud") - ket("duu")) / r2;
    b.one[0] = std::sqrt(2.0 / 3.0) * ket("udu") - (ket("uud") + ket("duu")) / r6;
    // m_S = -1/2: dot 2 down in |0>.
    b.zero[1] = (ket("udd") - ket("ddu")) / r2;
    b.one[1] = (ket("udd") + ket("ddu")) / r6 - std::sqrt(2.0 / 3.0) * ket("dud");
    b.leak[0] = ket("uuu");
    b.leak[1] = (ket("uud") + ket("udu") + ket("duu")) / r3;
    b.leak[2] = (ket("udd") + ket("dud") + ket("ddu")) / r3;
    b.leak[3] = ket("ddd");

    b.p0 = Matrix8c::Zero();
    b.p1 = Matrix8c::Zero();
    b.p_leak = Matrix8c::Zero();
    for (int g = 0; g < 2; ++g) {
        b.p0 += b.zero[g] * b.zero[g].adjoint();
        b.p1 += b.one[g] * b.one[g].adjoint();
    }
    for (const auto &v : b.leak) b.p_leak += v * v.adjoint();
    return b;
}

inline void require_finite_nonnegative(double tau, const char *what) {
    if (!std::isfinite(tau)) throw InvalidArgument(std::string(what) + ": non-finite duration");
    if (tau < 0.0) throw InvalidArgument(std::string(what) + ": negative duration");
}

}  // namespace detail

inline const EncodedBasis &encoded_basis() {
    static const EncodedBasis basis = detail::make_encoded_basis();
    return basis;
}

/// H = sum 2pi j_ij S_i.S_j + sum 2pi (f_B + b_i) S_z,i, in rad/s.
inline Hamiltonian8 build_hamiltonian(const ExchangeVector &j, const FieldConfig &fields = {}) {
    j.validate();
    fields.validate();
    Matrix8c h = j.j12 * detail::spin_dot(0, 1) + j.j23 * detail::spin_dot(1, 2) +
                 j.j13 * detail::spin_dot(0, 2);
    const double fb = fields.zeeman_hz();
    for (int d = 0; d < 3; ++d) h += (fb + fields.gradients[d]) * detail::spin_z(d);
    return Hamiltonian8{kTwoPi * h};
}

struct Spectrum {
    Vector8d values;   // ascending, rad/s
    Matrix8c vectors;  // columns are eigenvectors
};

/// Sorted eigenvalues and eigenvectors of a Hermitian Hamiltonian.
inline Spectrum eigenspectrum(const Hamiltonian8 &h) {
    if (hermiticity_defect(h.m) > 1e-12)
        throw ContractError("eigenspectrum: Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix8c> es(h.m);
    if (es.info() != Eigen::Success) throw NumericFailure("eigenspectrum: solver failed");
    Spectrum s{es.eigenvalues(), es.eigenvectors()};
    const double scale = h.m.norm();
    const Matrix8c rebuilt = s.vectors * s.values.cast<cplx>().asDiagonal() * s.vectors.adjoint();
    if ((rebuilt - h.m).norm() > 1e-9 * std::max(scale, 1e-300) && scale > 0.0)
        throw NumericFailure("eigenspectrum: reconstruction residual too large");
    return s;
}

/// exp(-i H tau), via the eigendecomposition.
inline Matrix8c propagator(const Hamiltonian8 &h, double tau) {
    detail::require_finite_nonnegative(tau, "propagator");
    if (tau == 0.0) return Matrix8c::Identity();
    const Spectrum s = eigenspectrum(h);
    Eigen::Matrix<cplx, 8, 1> phases;
    for (int k = 0; k < 8; ++k) phases(k) = std::polar(1.0, -s.values(k) * tau);
    return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

inline DensityMatrix8 apply_unitary(const DensityMatrix8 &rho, const Matrix8c &u) {
    Matrix8c out = u * rho.matrix() * u.adjoint();
    return DensityMatrix8::unchecked(0.5 * (out + out.adjoint()));
}

inline DensityMatrix8 initialize_singlet() {
    const auto &b = encoded_basis();
    Matrix8c rho = 0.5 * (b.zero[0] * b.zero[0].adjoint() + b.zero[1] * b.zero[1].adjoint());
    return DensityMatrix8::unchecked(rho);
}

/// rho' = exp(-i H tau) rho exp(+i H tau).
inline DensityMatrix8 evolve_const(const DensityMatrix8 &rho, const Hamiltonian8 &h, double tau) {
    detail::require_finite_nonnegative(tau, "evolve_const");
    if (tau == 0.0) return rho;
    return apply_unitary(rho, propagator(h, tau));
}

struct Segment {
    Hamiltonian8 h;
    double duration = 0.0;
};

/// Time-ordered product of segment propagators; the first segment acts first.
inline Matrix8c piecewise_propagator(std::span<const Segment> segments) {
    Matrix8c u = Matrix8c::Identity();
    for (const auto &seg : segments) u = propagator(seg.h, seg.duration) * u;
    return u;
}

inline DensityMatrix8 evolve_piecewise(const DensityMatrix8 &rho, std::span<const Segment> segments) {
    if (segments.empty()) return rho;
    for (const auto &seg : segments) detail::require_finite_nonnegative(seg.duration, "evolve_piecewise");
    return apply_unitary(rho, piecewise_propagator(segments));
}

inline double measure_p0(const DensityMatrix8 &rho) {
    return (encoded_basis().p0 * rho.matrix()).trace().real();
}

inline double measure_p1(const DensityMatrix8 &rho) {
    return (encoded_basis().p1 * rho.matrix()).trace().real();
}

inline double leakage_population(const DensityMatrix8 &rho) {
    return (encoded_basis().p_leak * rho.matrix()).trace().real();
}

/// Probability of |0> within one gauge sector (gauge 0: m_S=+1/2).
inline double measure_p0_gauge(const DensityMatrix8 &rho, int gauge) {
    const Vector8c &z = encoded_basis().zero.at(gauge);
    return (z.adjoint() * rho.matrix() * z)(0, 0).real();
}

/// Effective qubit Hamiltonian, -(1/2)[sqrt3 J- sx + (J13 - J+) sz], in rad/s.
inline Matrix2c qubit_block(const ExchangeVector &j) {
    j.validate();
    return -0.5 * kTwoPi * (kSqrt3 * j.j_minus() * pauli::x() + (j.j13 - j.j_plus()) * pauli::z());
}

/// Restriction of an 8x8 operator onto the {|0,m>,|1,m>} block of one gauge.
inline Matrix2c qubit_subspace_block(const Matrix8c &op, int gauge) {
    const auto &b = encoded_basis();
    const std::array<const Vector8c *, 2> kets{&b.zero.at(gauge), &b.one.at(gauge)};
    Matrix2c out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out(r, c) = (kets[r]->adjoint() * op * *kets[c])(0, 0);
    return out;
}

/// Bloch vector of the encoded qubit, summed over both gauge sectors.
inline Vec3 qubit_bloch(const DensityMatrix8 &rho) {
    Vec3 v = Vec3::Zero();
    for (int g = 0; g < 2; ++g) {
        const Matrix2c blk = qubit_subspace_block(rho.matrix(), g);
        v.x() += (blk * pauli::x()).trace().real();
        v.y() += (blk * pauli::y()).trace().real();
        v.z() += (blk * pauli::z()).trace().real();
    }
    return v;
}

}  // namespace aeon
