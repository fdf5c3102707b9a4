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

#pragma once

#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Dense>

namespace aeon {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline const double kSqrt3 = std::sqrt(3.0);

using Matrix2c = Eigen::Matrix<cplx, 2, 2>;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;
using Vector8c = Eigen::Matrix<cplx, 8, 1>;
using Vector8d = Eigen::Matrix<double, 8, 1>;
using Vec3 = Eigen::Vector3d;

namespace pauli {
inline Matrix2c identity() { return Matrix2c::Identity(); }
inline Matrix2c x() {
    Matrix2c m;
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix2c y() {
    Matrix2c m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
inline Matrix2c z() {
    Matrix2c m;
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

/// Frobenius norm of the anti-Hermitian part relative to the norm of `m`.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived> &m) {
    const double scale = m.norm();
    const double defect = (m - m.adjoint()).norm();
    if (scale == 0.0) return defect;
    return defect / scale;
}

/// Fidelity |tr(A^dagger B)|^2 / d^2 between two unitaries; 1 iff equal up to phase.
template <typename A, typename B>
double unitary_overlap(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
    const double d = static_cast<double>(a.rows());
    return std::norm((a.adjoint() * b).trace()) / (d * d);
}

/// Row-major CSV of "re,im" pairs: one matrix row per line, 2*cols numbers each.
/// The header row names every column, e.g. `re_0,im_0,re_1,im_1,...`.
template <typename Derived>
void write_matrix_csv(std::ostream &os, const Eigen::MatrixBase<Derived> &m,
                      const std::string &comment = {}) {
    if (!comment.empty()) os << "# " << comment << '\n';
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c) os << ',';
        os << "re_" << c << ",im_" << c;
    }
    os << '\n';
    std::ostringstream buf;
    buf << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) buf << ',';
            const cplx v = m(r, c);
            buf << v.real() << ',' << v.imag();
        }
        buf << '\n';
    }
    os << buf.str();
}

}  // namespace aeon
