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

// SU(2) rotation algebra for the encoded qubit.
//
// A Rotation is the unit quaternion (w, v) standing for the unitary
//     U = w - i v.sigma,   w = cos(Theta/2), v = sin(Theta/2) k.
// Rotations are always compared up to global phase, i.e. q and -q are the
// same physical operation.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "aeon/errors.hpp"
#include "aeon/linalg.hpp"
#include "aeon/spin_hilbert.hpp"

namespace aeon {

namespace axes {
inline Vec3 x() { return {1.0, 0.0, 0.0}; }
inline Vec3 y() { return {0.0, 1.0, 0.0}; }
inline Vec3 z() { return {0.0, 0.0, 1.0}; }
/// 1-J axis driven by J23 alone.
inline Vec3 n() { return Vec3(-kSqrt3, 0.0, -1.0) / 2.0; }
/// 1-J axis driven by J12 alone.
inline Vec3 m() { return Vec3(kSqrt3, 0.0, -1.0) / 2.0; }
}  // namespace axes

/// Wraps an angle into (-pi, pi].
inline double wrap_pi(double a) {
    double r = std::remainder(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

/// Wraps an angle into [0, period).
inline double wrap_positive(double a, double period) {
    double r = std::fmod(a, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return r;
}

/// Rotation about the xz-plane axis (cos phi, 0, sin phi) by theta.
struct AxisAngle {
    double phi = 0.0;
    double theta = 0.0;

    /// phi into (-pi, pi], theta into [0, 4pi).
    AxisAngle normalized() const { return {wrap_pi(phi), wrap_positive(theta, 2.0 * kTwoPi)}; }

    Vec3 axis() const { return {std::cos(phi), 0.0, std::sin(phi)}; }
};

class Rotation {
  public:
    Rotation() = default;
    Rotation(double w, const Vec3 &v) : w_(w), v_(v) {}

    static Rotation identity() { return {}; }

    /// Right-handed rotation by `angle` about `axis` (normalized internally).
    static Rotation about(const Vec3 &axis, double angle) {
        const double n = axis.norm();
        if (!(n > 0.0)) throw InvalidArgument("Rotation::about: zero axis");
        return {std::cos(0.5 * angle), std::sin(0.5 * angle) * axis / n};
    }

    static Rotation from(const AxisAngle &aa) { return about(aa.axis(), aa.theta); }

    /// Extracts the rotation from an SU(2) or U(2) matrix (global phase removed).
    static Rotation from_unitary(const Matrix2c &u) {
        const cplx det = u.determinant();
        const Matrix2c su = u / std::sqrt(det);
        // su = w I - i (x sx + y sy + z sz)
        const double w = 0.5 * su.trace().real();
        const double x = -0.5 * (su * pauli::x()).trace().imag();
        const double y = -0.5 * (su * pauli::y()).trace().imag();
        const double z = -0.5 * (su * pauli::z()).trace().imag();
        return Rotation(w, Vec3(x, y, z)).normalized();
    }

    double w() const { return w_; }
    const Vec3 &v() const { return v_; }

    double norm() const { return std::sqrt(w_ * w_ + v_.squaredNorm()); }

    Rotation normalized() const {
        const double n = norm();
        return {w_ / n, v_ / n};
    }

    Rotation inverse() const { return {w_, -v_}; }

    /// Rotation angle in [0, 2pi] with the sign convention w >= 0 folded in.
    double angle() const { return 2.0 * std::atan2(v_.norm(), std::abs(w_)); }

    /// Unit axis k; returns z for the identity.
    Vec3 axis() const {
        const double s = v_.norm();
        if (s < 1e-15) return axes::z();
        return (w_ < 0.0 ? -v_ : v_) / s;
    }

    /// Applies the SO(3) image of this rotation to a Bloch vector.
    Vec3 rotate(const Vec3 &r) const {
        return r + 2.0 * w_ * v_.cross(r) + 2.0 * v_.cross(v_.cross(r));
    }

    /// Equality up to global phase.
    bool approx_equal(const Rotation &o, double tol = 1e-9) const {
        const double dot = w_ * o.w_ + v_.dot(o.v_);
        return 1.0 - std::abs(dot) <= tol;
    }

    /// Representative with a fixed sign so that q and -q map to the same key.
    std::array<double, 4> canonical() const {
        std::array<double, 4> c{w_, v_.x(), v_.y(), v_.z()};
        for (double comp : c) {
            if (std::abs(comp) > 1e-9) {
                if (comp < 0.0)
                    for (double &e : c) e = -e;
                break;
            }
        }
        return c;
    }

  private:
    double w_ = 1.0;
    Vec3 v_ = Vec3::Zero();
};

/// second * first: apply `first`, then `second`.
inline Rotation compose(const Rotation &second, const Rotation &first) {
    const double w = second.w() * first.w() - second.v().dot(first.v());
    const Vec3 v = second.w() * first.v() + first.w() * second.v() + second.v().cross(first.v());
    return {w, v};
}

inline Rotation operator*(const Rotation &a, const Rotation &b) { return compose(a, b); }

/// cos(Theta/2) I - i sin(Theta/2) k.sigma.
inline Matrix2c to_unitary(const Rotation &r) {
    const double w = r.w();
    const double x = r.v().x(), y = r.v().y(), z = r.v().z();
    Matrix2c u;
    u << cplx(w, -z), cplx(-y, -x), cplx(y, -x), cplx(w, z);
    return u;
}

/// The propagator exp(-i H t) produced by the exchange Hamiltonian is the
/// complex conjugate of the rotation written in the cos - i sin convention.
/// For an xz-plane rotation this is the inverse rotation. All return
/// probabilities of xz-plane sequences starting from |0> are identical in
/// both conventions.
inline Rotation complex_conjugate(const Rotation &r) {
    return {r.w(), Vec3(-r.v().x(), r.v().y(), -r.v().z())};
}

inline std::ostream &operator<<(std::ostream &os, const Rotation &r) {
    return os << "Rotation(w=" << r.w() << ", v=[" << r.v().x() << ", " << r.v().y() << ", "
              << r.v().z() << "])";
}

/// Rotation generated by a constant exchange pulse of duration tau.
/// Omega = 2pi sqrt(3 J-^2 + (J13 - J+)^2), phi = atan2(J13 - J+, sqrt3 J-).
inline AxisAngle exchange_to_rotation(const ExchangeVector &j, double tau) {
    j.validate();
    if (!std::isfinite(tau) || tau < 0.0)
        throw InvalidArgument("exchange_to_rotation: tau must be finite and >= 0");
    const double rx = kSqrt3 * j.j_minus();
    const double rz = j.j13 - j.j_plus();
    const double omega = kTwoPi * std::hypot(rx, rz);
    if (omega == 0.0) return {0.0, 0.0};
    // +0.0 turns a -0.0 numerator into +0.0 so the axis -x maps to +pi.
    const double phi = std::atan2(rz + 0.0, rx);
    return AxisAngle{phi, omega * tau}.normalized();
}

/// Angular rotation frequency Omega in rad/s.
inline double rotation_rate(const ExchangeVector &j) {
    return kTwoPi * std::hypot(kSqrt3 * j.j_minus(), j.j13 - j.j_plus());
}

/// Which exchange coupling is held at zero during a 2-J pulse.
enum class IdlePair { k12, k23, k13 };

/// Exchange values realizing rotation `target` in time tau with one pair idle.
/// Throws InvalidArgument when the axis is not reachable with non-negative J.
inline ExchangeVector exchange_for_rotation(const AxisAngle &target, double tau, IdlePair idle) {
    if (!(tau > 0.0)) throw InvalidArgument("exchange_for_rotation: tau must be > 0");
    const double omega_hz = target.theta / (kTwoPi * tau);
    const double rx = std::cos(target.phi) * omega_hz;
    const double rz = std::sin(target.phi) * omega_hz;
    ExchangeVector j;
    switch (idle) {
        case IdlePair::k13: {
            const double jp = -rz;
            const double jm = rx / kSqrt3;
            j = {jp + jm, jp - jm, 0.0};
            break;
        }
        case IdlePair::k23: {
            const double j12 = 2.0 * rx / kSqrt3;
            j = {j12, 0.0, rz + 0.5 * j12};
            break;
        }
        case IdlePair::k12: {
            const double j23 = -2.0 * rx / kSqrt3;
            j = {0.0, j23, rz + 0.5 * j23};
            break;
        }
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(omega_hz));
    for (double *c : {&j.j12, &j.j23, &j.j13}) {
        if (*c < -tol)
            throw InvalidArgument("exchange_for_rotation: axis not reachable with this idle pair");
        *c = std::max(*c, 0.0);
    }
    return j;
}

/// Net rotation R_eta(chi) R_phi(theta) written through the closed-form
/// half-angle expressions; sin^2(Phi/2) is taken as 1 - cos^2(Phi/2).
struct ComposedParameters {
    double cos_half = 1.0;  // cos(Phi/2)
    double sin_half = 0.0;  // sin(Phi/2) >= 0
    Vec3 k = axes::z();     // unit axis (arbitrary when sin_half == 0)
};

/// Expanded sin^2(Phi/2) =
///   [cos(chi/2) sin(theta/2) + sin(chi/2) cos(theta/2) cos(phi-eta)]^2
///   + sin^2(chi/2) sin^2(phi-eta).
inline double sin_half_squared_expanded(double phi, double theta, double eta, double chi) {
    const double a = std::cos(0.5 * chi) * std::sin(0.5 * theta) +
                     std::sin(0.5 * chi) * std::cos(0.5 * theta) * std::cos(phi - eta);
    const double b = std::sin(0.5 * chi) * std::sin(phi - eta);
    return a * a + b * b;
}

inline ComposedParameters composed_parameters(double phi, double theta, double eta, double chi) {
    const double ct = std::cos(0.5 * theta), st = std::sin(0.5 * theta);
    const double cc = std::cos(0.5 * chi), sc = std::sin(0.5 * chi);
    ComposedParameters out;
    out.cos_half = cc * ct - sc * st * std::cos(phi - eta);
    const double sin2 = std::max(0.0, 1.0 - out.cos_half * out.cos_half);
    out.sin_half = std::sqrt(sin2);
    const Vec3 num(std::cos(phi) * cc * st + sc * ct * std::cos(eta),
                   -st * sc * std::sin(phi - eta),
                   sc * ct * std::sin(eta) + std::sin(phi) * cc * st);
    if (out.sin_half > 1e-12) {
        out.k = num / out.sin_half;
    } else {
        out.k = Vec3(std::cos(phi), 0.0, std::sin(phi));
    }
    return out;
}

}  // namespace aeon
