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

// Calibration germs, the Clifford twirl, and the closed-form fidelity surface.
//
// For a probe rotation R = R_phi(theta) and a pre-calibrated rotation
// P = R_eta(chi), the calibration sequence is
//     U(N) = U_ax^N U_ang^N,  U_ax = R^(2q),  U_ang = (P R^q)^2,
// with q theta* = s pi for odd s, so that U(N) = 1 at (phi*, theta*).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <span>
#include <vector>

#include "aeon/clifford.hpp"
#include "aeon/errors.hpp"
#include "aeon/polynomials.hpp"
#include "aeon/rng.hpp"
#include "aeon/spin_hilbert.hpp"
#include "aeon/su2.hpp"

namespace aeon {

struct GermConfig {
    AxisAngle target;   // (phi*, theta*)
    int q = 1;
    int s = 1;
    int n = 1;          // germ power N
    AxisAngle precal;   // (eta, chi)
    int shots = 0;      // 0: exact twirl

    void validate() const {
        if (q < 1) throw InvalidArgument("GermConfig: q must be >= 1");
        if (s % 2 == 0) throw InvalidArgument("GermConfig: s must be odd");
        if (n < 1) throw InvalidArgument("GermConfig: N must be >= 1");
        if (std::abs(q * target.theta - s * kPi) > 1e-9)
            throw InvalidArgument("GermConfig: q * theta* must equal s * pi with s odd");
    }
};

/// Smallest q with q theta* = s pi, s odd. Throws InvalidArgument if theta*
/// is not such a rational multiple of pi with q <= max_q.
inline std::pair<int, int> germ_multiplicity(double theta_star, int max_q = 64) {
    if (!(theta_star > 0.0) || !std::isfinite(theta_star))
        throw InvalidArgument("germ_multiplicity: theta* must be positive");
    for (int q = 1; q <= max_q; ++q) {
        const double ratio = q * theta_star / kPi;
        const double s = std::round(ratio);
        if (std::abs(ratio - s) < 1e-9 && static_cast<long long>(s) % 2 != 0)
            return {q, static_cast<int>(s)};
    }
    throw InvalidArgument("theta* must satisfy q * theta* = s * pi for an odd integer s");
}

/// Germ configuration for `target` with the given pre-calibrated rotation.
inline GermConfig make_germ_config(const AxisAngle &target, const AxisAngle &precal, int n,
                                   int shots = 0) {
    const auto [q, s] = germ_multiplicity(target.theta);
    GermConfig cfg{target, q, s, n, precal, shots};
    cfg.validate();
    return cfg;
}

/// Default pre-calibrated rotation: pi about eta = phi* + pi/2.
inline AxisAngle default_precal(const AxisAngle &target) {
    return {wrap_pi(target.phi + kPi / 2), kPi};
}

enum class GermSlot : std::uint8_t { kProbe, kPrecal };

/// Pulse slots of U(N) in application order: (q probes, precal) x 2 x N for
/// U_ang^N, then 2qN probes for U_ax^N.
inline std::vector<GermSlot> germ_layout(int q, int n) {
    std::vector<GermSlot> out;
    out.reserve(static_cast<std::size_t>(4 * q * n + 2 * n));
    for (int rep = 0; rep < 2 * n; ++rep) {
        for (int k = 0; k < q; ++k) out.push_back(GermSlot::kProbe);
        out.push_back(GermSlot::kPrecal);
    }
    for (int k = 0; k < 2 * q * n; ++k) out.push_back(GermSlot::kProbe);
    return out;
}

/// U(N) expanded into pulses (application order) for probe rotation `probe`.
inline std::vector<AxisAngle> build_germ_sequence(const GermConfig &cfg, const AxisAngle &probe) {
    cfg.validate();
    std::vector<AxisAngle> out;
    for (GermSlot slot : germ_layout(cfg.q, cfg.n))
        out.push_back(slot == GermSlot::kProbe ? probe : cfg.precal);
    return out;
}

/// Composition of a pulse list; pulses[0] acts first.
inline Rotation compose_sequence(std::span<const AxisAngle> pulses) {
    Rotation r;
    for (const auto &p : pulses) r = compose(Rotation::from(p), r);
    return r;
}

inline Rotation power(const Rotation &r, int k) {
    Rotation out;
    Rotation base = r;
    while (k > 0) {
        if (k & 1) out = compose(base, out);
        base = compose(base, base);
        k >>= 1;
    }
    return out;
}

/// U(N) for arbitrary probe and pre-calibrated rotations.
inline Rotation compose_germ(const Rotation &probe, const Rotation &precal, int q, int n) {
    const Rotation rq = power(probe, q);
    const Rotation pr = compose(precal, rq);
    const Rotation ang = compose(pr, pr);
    const Rotation ax = power(probe, 2 * q);
    return compose(power(ax, n), power(ang, n));
}

struct TwirlEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

/// |<0|M|0>|^2 for M = w - i v.sigma.
inline double survival(const Rotation &m) { return m.w() * m.w() + m.v().z() * m.v().z(); }

/// (1/|C|) sum_i |<0| C_i^dagger U C_i |0>|^2. With shots > 0 each term is
/// estimated from `shots` Bernoulli trials, terms visited in random order.
inline TwirlEstimate twirl_fidelity(const Rotation &u, std::span<const CliffordElement> cliffords,
                                    int shots = 0, Rng *rng = nullptr) {
    if (cliffords.size() != kCliffordGroupSize)
        throw InvalidArgument("twirl_fidelity: need the 24-element Clifford group");
    std::array<double, kCliffordGroupSize> p{};
    for (std::size_t i = 0; i < cliffords.size(); ++i) {
        const Rotation &c = cliffords[i].rotation;
        p[i] = std::clamp(survival(compose(c.inverse(), compose(u, c))), 0.0, 1.0);
    }
    TwirlEstimate out;
    if (shots <= 0) {
        double sum = 0.0;
        for (double v : p) sum += v;
        out.estimate = sum / kCliffordGroupSize;
        return out;
    }
    if (!rng) throw InvalidArgument("twirl_fidelity: sampling requires an RNG");
    std::array<std::size_t, kCliffordGroupSize> order{};
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), *rng);
    double sum = 0.0, var = 0.0;
    for (std::size_t i : order) {
        std::binomial_distribution<int> draw(shots, p[i]);
        const double est = static_cast<double>(draw(*rng)) / shots;
        sum += est;
        var += est * (1.0 - est) / shots;
    }
    out.estimate = sum / kCliffordGroupSize;
    out.stderr_ = std::sqrt(var) / kCliffordGroupSize;
    return out;
}

/// Twirl of an 8x8 propagator with physically realized 8x8 Clifford
/// propagators, starting from `rho0` and reading out P0.
inline double twirl_fidelity(const Matrix8c &u, std::span<const Matrix8c> clifford_propagators,
                             const DensityMatrix8 &rho0 = initialize_singlet()) {
    if (clifford_propagators.size() != kCliffordGroupSize)
        throw InvalidArgument("twirl_fidelity: need the 24-element Clifford group");
    double sum = 0.0;
    for (const auto &c : clifford_propagators) {
        const Matrix8c seq = c.adjoint() * u * c;
        sum += measure_p0(apply_unitary(rho0, seq));
    }
    return sum / kCliffordGroupSize;
}

/// How the angle arguments of the closed form are read.
///   kAccumulated: the cos(N theta), sin(N theta) factors take the angle of
///     U_ax = R^(2q), i.e. 2 q theta, and Phi, k describe P R^q.
///   kLiteral: raw pulse angle theta in those factors and Phi, k of P R.
/// Only kAccumulated reproduces the explicit twirl; kLiteral is kept to
/// document the difference.
enum class FidelityConvention { kAccumulated, kLiteral };

/// Closed-form twirled fidelity of U(N) relative to the identity, written
/// with spread polynomials S_2N and Chebyshev U_{4N-1}.
inline double analytic_fidelity(double phi, double theta, double eta, double chi, int n, int q,
                                FidelityConvention conv = FidelityConvention::kAccumulated) {
    const double probe_angle = conv == FidelityConvention::kAccumulated ? q * theta : theta;
    const double germ_angle = conv == FidelityConvention::kAccumulated ? 2.0 * q * theta : theta;
    const ComposedParameters cp = composed_parameters(phi, probe_angle, eta, chi);
    const double rx = std::cos(phi), rz = std::sin(phi);
    const Vec3 &k = cp.k;
    const double cross2 = (rx * k.z() - rz * k.x()) * (rx * k.z() - rz * k.x()) + k.y() * k.y();
    const double along = rx * k.x() + rz * k.z();
    const double nt = n * germ_angle;
    const double half = std::sin(0.5 * nt);
    const double spread = spread_polynomial(2 * n, cp.sin_half * cp.sin_half);
    const double cheb = chebyshev_u(4 * n - 1, cp.cos_half) * cp.sin_half;
    const double bracket = (std::cos(nt) + cross2 * half * half) * spread +
                           0.5 * along * std::sin(nt) * cheb + half * half;
    return std::clamp(1.0 - (2.0 / 3.0) * bracket, 0.0, 1.0);
}

inline double analytic_fidelity(const AxisAngle &probe, const GermConfig &cfg) {
    return analytic_fidelity(probe.phi, probe.theta, cfg.precal.phi, cfg.precal.theta, cfg.n, cfg.q);
}

}  // namespace aeon
