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

// Independent reference implementations used only by the tests. Nothing here
// calls into the library's own constructions.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using M2 = Eigen::Matrix2cd;
using M8 = Eigen::Matrix<cplx, 8, 8>;

inline constexpr double kPi = 3.14159265358979323846;

inline M2 sx() { M2 m; m << 0, 1, 1, 0; return m; }
inline M2 sy() { M2 m; m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
inline M2 sz() { M2 m; m << 1, 0, 0, -1; return m; }
inline M2 id2() { return M2::Identity(); }

inline M8 kron3(const M2 &a, const M2 &b, const M2 &c) {
    M8 out;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            out(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
    return out;
}

inline M8 pauli_on(int dot, const M2 &p) {
    std::array<M2, 3> f{id2(), id2(), id2()};
    f[dot] = p;
    return kron3(f[0], f[1], f[2]);
}

// (1/4) sum_a sigma^a_i sigma^a_j
inline M8 heisenberg(int i, int j) {
    return 0.25 * (pauli_on(i, sx()) * pauli_on(j, sx()) + pauli_on(i, sy()) * pauli_on(j, sy()) +
                   pauli_on(i, sz()) * pauli_on(j, sz()));
}

// Hamiltonian in rad/s: exchange in Hz, Zeeman terms in Hz per dot.
inline M8 hamiltonian(double j12, double j23, double j13, std::array<double, 3> zeeman_hz = {}) {
    M8 h = j12 * heisenberg(0, 1) + j23 * heisenberg(1, 2) + j13 * heisenberg(0, 2);
    for (int d = 0; d < 3; ++d) h += zeeman_hz[d] * 0.5 * pauli_on(d, sz());
    return 2.0 * kPi * h;
}

// exp(A) by scaling and squaring with a 30-term Taylor series.
template <typename M>
M expm_taylor(const M &a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    while (norm / std::pow(2.0, s) > 0.5) ++s;
    const M b = a / std::pow(2.0, s);
    M term = M::Identity(b.rows(), b.cols());
    M sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

// Rotation by theta about (cos phi, 0, sin phi): cos(t/2) - i sin(t/2) n.sigma.
inline M2 rot(double phi, double theta) {
    const M2 ns = std::cos(phi) * sx() + std::sin(phi) * sz();
    return std::cos(theta / 2) * id2() - cplx(0, 1) * std::sin(theta / 2) * ns;
}

inline M2 rot_axis(double x, double y, double z, double theta) {
    const double n = std::sqrt(x * x + y * y + z * z);
    const M2 ns = (x * sx() + y * sy() + z * sz()) / n;
    return std::cos(theta / 2) * id2() - cplx(0, 1) * std::sin(theta / 2) * ns;
}

// 1 - |tr(A^dag B)|^2 / d^2
template <typename M>
double phase_infidelity(const M &a, const M &b) {
    const double d = static_cast<double>(a.rows());
    return 1.0 - std::norm((a.adjoint() * b).trace()) / (d * d);
}

// Clifford group as 2x2 matrices from breadth-first products of H and S,
// deduplicated up to global phase.
inline std::vector<M2> clifford_group() {
    M2 h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    M2 s;
    s << 1, 0, 0, cplx(0, 1);
    std::vector<M2> group{id2()};
    for (std::size_t k = 0; k < group.size(); ++k)
        for (const M2 &g : {h, s}) {
            const M2 c = g * group[k];
            bool seen = false;
            for (const M2 &e : group) seen = seen || phase_infidelity(e, c) < 1e-12;
            if (!seen) group.push_back(c);
        }
    return group;
}

// Average |<0|C^dag U C|0>|^2 over the explicitly enumerated group.
inline double twirl_enumerated(const M2 &u) {
    static const std::vector<M2> group = clifford_group();
    double sum = 0.0;
    for (const M2 &c : group) sum += std::norm((c.adjoint() * u * c)(0, 0));
    return sum / static_cast<double>(group.size());
}

// Unitary 2-design closed form.
inline double twirl_closed_form(const M2 &u) {
    const double d = 2.0;
    return (std::norm(u.trace()) / std::abs(u.determinant()) + d) / (d * (d + 1.0));
}

// U(N) = (R^(2q))^N ((P R^q)^2)^N, composed pulse by pulse.
inline M2 germ(double phi, double theta, double eta, double chi, int q, int n) {
    const M2 r = rot(phi, theta), p = rot(eta, chi);
    M2 u = id2();
    for (int rep = 0; rep < 2 * n; ++rep) {
        for (int k = 0; k < q; ++k) u = r * u;
        u = p * u;
    }
    for (int k = 0; k < 2 * q * n; ++k) u = r * u;
    return u;
}

}  // namespace oracle
