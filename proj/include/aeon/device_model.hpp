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

// Voltage-domain device model: virtual gates, exponential exchange laws,
// exchange cross-compensation, double-sweet-spot detuning sensitivity and
// quasi-static noise.
//
// Two orderings appear here and must not be mixed up:
//   * pair order (12, 23, 13), matching ExchangeVector and ExchangeVoltages;
//   * gate order (P1, P2, P3, X12, X13, X23), matching the compensation
//     matrix, the cross matrix (X12, X13, X23) and NoiseConfig sigmas.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aeon/errors.hpp"
#include "aeon/rng.hpp"
#include "aeon/spin_hilbert.hpp"
#include "aeon/su2.hpp"

namespace aeon {

enum class Pair : int { k12 = 0, k23 = 1, k13 = 2 };

inline constexpr std::array<Pair, 3> kPairs{Pair::k12, Pair::k23, Pair::k13};
inline constexpr std::array<const char *, 3> kPairNames{"12", "23", "13"};
/// Position of each pair (pair order) among the exchange gates (X12, X13, X23).
inline constexpr std::array<int, 3> kGateSlotOfPair{0, 2, 1};

inline int index(Pair p) { return static_cast<int>(p); }

inline double &component(ExchangeVector &j, Pair p) {
    switch (p) {
        case Pair::k12: return j.j12;
        case Pair::k23: return j.j23;
        default: return j.j13;
    }
}
inline double component(const ExchangeVector &j, Pair p) {
    return component(const_cast<ExchangeVector &>(j), p);
}

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Virtual = C * physical over (P1, P2, P3, X12, X13, X23).
class CompensationMatrix {
  public:
    CompensationMatrix() : c_(Matrix6d::Identity()) { factorize(); }
    explicit CompensationMatrix(const Matrix6d &c) : c_(c) {
        validate();
        factorize();
    }

    /// Matrix used for the triangular device (plunger rows compensated).
    static CompensationMatrix measured() {
        Matrix6d c;
        c << 1, 0.19, 0.18, 0.51, 0.67, 0.21,  //
            -0.19, 1, 0.20, 0.38, 0.36, 0.49,  //
            0.06, 0.20, 1, 0.16, 0.98, 0.53,   //
            0, 0, 0, 1, 0, 0,                  //
            0, 0, 0, 0, 1, 0,                  //
            0, 0, 0, 0, 0, 1;
        return CompensationMatrix(c);
    }

    const Matrix6d &matrix() const { return c_; }

    Vector6d virtualize(const Vector6d &physical) const { return c_ * physical; }
    Vector6d devirtualize(const Vector6d &virt) const { return lu_.solve(virt); }

  private:
    void validate() const {
        if (!c_.allFinite()) throw ConfigError("compensation matrix: non-finite entry");
        if (c_.block<3, 3>(3, 0).cwiseAbs().maxCoeff() != 0.0)
            throw ConfigError("compensation matrix: lower-left block must be zero");
        if ((c_.block<3, 3>(3, 3) - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() != 0.0)
            throw ConfigError("compensation matrix: lower-right block must be identity");
    }

    void factorize() {
        lu_ = Eigen::FullPivLU<Matrix6d>(c_);
        if (!lu_.isInvertible()) throw ConfigError("compensation matrix is singular");
        const Eigen::JacobiSVD<Matrix6d> svd(c_);
        const auto &s = svd.singularValues();
        if (!(s(5) > 0.0) || !std::isfinite(s(0) / s(5)))
            throw ConfigError("compensation matrix is ill-conditioned");
    }

    Matrix6d c_;
    Eigen::FullPivLU<Matrix6d> lu_;
};

/// V'_X = D V_X over gate order (X12, X13, X23); unit diagonal.
class ExchangeCrossMatrix {
  public:
    ExchangeCrossMatrix() : d_(Eigen::Matrix3d::Identity()) {}
    explicit ExchangeCrossMatrix(const Eigen::Matrix3d &d) : d_(d) {
        if (!d_.allFinite()) throw ConfigError("cross matrix: non-finite entry");
        for (int i = 0; i < 3; ++i)
            if (d_(i, i) != 1.0) throw ConfigError("cross matrix: diagonal must be 1");
    }

    /// First-order exchange-gate cross-coupling used for the 2-J maps.
    static ExchangeCrossMatrix measured() {
        Eigen::Matrix3d d;
        d << 1, -0.08, -0.08,  //
            -0.24, 1, -0.18,   //
            -0.15, -0.19, 1;
        return ExchangeCrossMatrix(d);
    }

    const Eigen::Matrix3d &matrix() const { return d_; }

  private:
    Eigen::Matrix3d d_;
};

/// Virtual exchange voltages in pair order; nullopt marks an idle gate (J = 0).
using ExchangeVoltages = std::array<std::optional<double>, 3>;

/// J = A exp(B V + C) per pair.
struct PairLaw {
    double a_hz = 1e6;
    double b_per_v = 50.0;
    double c = 0.0;
};

struct ExchangeLaw {
    std::array<PairLaw, 3> pairs{};  // pair order

    const PairLaw &operator[](Pair p) const { return pairs[index(p)]; }
    PairLaw &operator[](Pair p) { return pairs[index(p)]; }

    void validate() const {
        for (int i = 0; i < 3; ++i) {
            const auto &l = pairs[i];
            if (!(l.a_hz > 0.0) || !(l.b_per_v > 0.0) || !std::isfinite(l.c) ||
                !std::isfinite(l.a_hz) || !std::isfinite(l.b_per_v))
                throw ConfigError(std::string("exchange law for pair ") + kPairNames[i] +
                                  ": need A > 0, B > 0, finite C");
        }
    }

    double exchange(Pair p, double v) const {
        const auto &l = (*this)[p];
        const double arg = l.b_per_v * v + l.c;
        const double j = l.a_hz * std::exp(arg);
        if (!std::isfinite(j))
            throw RangeError(std::string("exchange law overflow for pair ") + kPairNames[index(p)]);
        return j;
    }

    double voltage(Pair p, double j_hz) const {
        if (!(j_hz > 0.0))
            throw InvalidArgument("ExchangeLaw::voltage: J must be > 0 to invert the law");
        const auto &l = (*this)[p];
        return (std::log(j_hz / l.a_hz) - l.c) / l.b_per_v;
    }
};

/// Applies the cross matrix with idle gates contributing zero.
inline ExchangeVoltages apply_cross(const ExchangeVoltages &v, const ExchangeCrossMatrix &cross) {
    Eigen::Vector3d gate = Eigen::Vector3d::Zero();
    for (Pair p : kPairs)
        if (v[index(p)]) gate(kGateSlotOfPair[index(p)]) = *v[index(p)];
    const Eigen::Vector3d mapped = cross.matrix() * gate;
    ExchangeVoltages out;
    for (Pair p : kPairs)
        if (v[index(p)]) out[index(p)] = mapped(kGateSlotOfPair[index(p)]);
    return out;
}

inline ExchangeVector exchange_from_voltages(const ExchangeVoltages &v, const ExchangeLaw &law,
                                             const ExchangeCrossMatrix *cross = nullptr) {
    for (const auto &x : v)
        if (x && !std::isfinite(*x)) throw InvalidArgument("exchange_from_voltages: non-finite voltage");
    const ExchangeVoltages eff = cross ? apply_cross(v, *cross) : v;
    ExchangeVector j;
    for (Pair p : kPairs)
        if (eff[index(p)]) component(j, p) = law.exchange(p, *eff[index(p)]);
    return j;
}

/// Voltages realizing exchange `j`; pairs with J == 0 are idle. With a cross
/// matrix, the active gates are solved jointly so that D V reproduces the
/// required effective voltages.
inline ExchangeVoltages voltages_for_exchange(const ExchangeVector &j, const ExchangeLaw &law,
                                              const ExchangeCrossMatrix *cross = nullptr) {
    ExchangeVoltages eff;
    for (Pair p : kPairs)
        if (component(j, p) > 0.0) eff[index(p)] = law.voltage(p, component(j, p));
    if (!cross) return eff;
    std::vector<int> active;
    for (Pair p : kPairs)
        if (eff[index(p)]) active.push_back(index(p));
    const int n = static_cast<int>(active.size());
    Eigen::MatrixXd sub(n, n);
    Eigen::VectorXd rhs(n);
    for (int r = 0; r < n; ++r) {
        rhs(r) = *eff[active[r]];
        for (int c = 0; c < n; ++c)
            sub(r, c) = cross->matrix()(kGateSlotOfPair[active[r]], kGateSlotOfPair[active[c]]);
    }
    const Eigen::VectorXd sol = sub.fullPivLu().solve(rhs);
    ExchangeVoltages out;
    for (int r = 0; r < n; ++r) out[active[r]] = sol(r);
    return out;
}

/// Quadratic exchange sensitivity to tilt and dimple detunings about the DSS.
struct DetuningCurvature {
    double tilt_per_v2 = 0.0;
    double dimple_per_v2 = 0.0;
};

struct DetuningSensitivity {
    std::array<double, 3> dss_location_v{0.0, 0.0, 0.0};  // virtual plungers
    std::array<DetuningCurvature, 3> curvature{};          // pair order
};

/// Tilt (e2 - e1)/2 and dimple e3 - (e1 + e2)/2 of plunger offsets.
inline std::pair<double, double> differential_modes(const std::array<double, 3> &delta_p) {
    const double tilt = 0.5 * (delta_p[1] - delta_p[0]);
    const double dimple = delta_p[2] - 0.5 * (delta_p[0] + delta_p[1]);
    return {tilt, dimple};
}

/// Per-pair multiplicative J factors exp(a_t e_t^2 + a_d e_d^2), in pair order.
inline std::array<double, 3> detuning_penalty(const std::array<double, 3> &delta_p,
                                              const DetuningSensitivity &sens) {
    for (double d : delta_p)
        if (!std::isfinite(d)) throw InvalidArgument("detuning_penalty: non-finite offset");
    const auto [et, ed] = differential_modes(delta_p);
    std::array<double, 3> f{};
    for (int i = 0; i < 3; ++i) {
        const auto &c = sens.curvature[i];
        f[i] = std::exp(c.tilt_per_v2 * et * et + c.dimple_per_v2 * ed * ed);
    }
    return f;
}

enum class ResamplePolicy { kPerShot, kPerSequence };

struct NoiseConfig {
    std::array<double, 6> voltage_sigma_v{};  // gate order P1..X23
    std::array<double, 3> gradient_sigma_hz{};
    ResamplePolicy policy = ResamplePolicy::kPerShot;
    std::uint64_t seed = 0;

    bool silent() const {
        for (double s : voltage_sigma_v)
            if (s != 0.0) return false;
        for (double s : gradient_sigma_hz)
            if (s != 0.0) return false;
        return true;
    }

    void validate() const {
        for (double s : voltage_sigma_v)
            if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("noise: voltage sigma must be >= 0");
        for (double s : gradient_sigma_hz)
            if (!(s >= 0.0) || !std::isfinite(s)) throw ConfigError("noise: gradient sigma must be >= 0");
    }
};

/// One quasi-static realization: virtual voltage offsets (gate order) and
/// per-dot gradient fields in Hz.
struct NoiseDraw {
    std::array<double, 6> voltage_offsets_v{};
    std::array<double, 3> gradients_hz{};
};

inline NoiseDraw sample_noise(const NoiseConfig &cfg, Rng &rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    NoiseDraw d;
    // Draw every variate even when its sigma is zero so the stream position
    // does not depend on which sigmas are enabled.
    for (int i = 0; i < 6; ++i) d.voltage_offsets_v[i] = cfg.voltage_sigma_v[i] * unit(rng);
    for (int i = 0; i < 3; ++i) d.gradients_hz[i] = cfg.gradient_sigma_hz[i] * unit(rng);
    return d;
}

/// Per-pair linear rise and fall of the exchange envelope. Unequal rise times
/// across pairs make the instantaneous J ratios vary, so the slices no longer
/// commute.
struct RampProfile {
    std::array<double, 3> rise_s{};  // pair order
    std::array<double, 3> fall_s{};
    int slices = 16;
};

struct VoltagePulse {
    ExchangeVoltages v_x{};
    double duration_s = 0.0;
    std::optional<RampProfile> ramp;
};

struct DeviceModel {
    CompensationMatrix compensation = CompensationMatrix::measured();
    ExchangeCrossMatrix cross = ExchangeCrossMatrix::measured();
    bool use_cross_compensation = false;
    ExchangeLaw law{};
    DetuningSensitivity sensitivity{};
    NoiseConfig noise{};
    FieldConfig fields{};
    double pulse_duration_s = 10e-9;
    double idle_time_s = 0.0;

    const ExchangeCrossMatrix *cross_or_null() const {
        return use_cross_compensation ? &cross : nullptr;
    }

    void validate() const {
        law.validate();
        noise.validate();
        fields.validate();
        if (!(pulse_duration_s > 0.0)) throw ConfigError("pulse duration must be > 0");
        if (!(idle_time_s >= 0.0)) throw ConfigError("idle time must be >= 0");
    }
};

/// Exchange produced by `v` on `model` under one noise draw.
inline ExchangeVector noisy_exchange(const ExchangeVoltages &v, const DeviceModel &model,
                                     const NoiseDraw &noise) {
    ExchangeVoltages shifted = v;
    for (Pair p : kPairs)
        if (shifted[index(p)]) *shifted[index(p)] += noise.voltage_offsets_v[3 + kGateSlotOfPair[index(p)]];
    ExchangeVector j = exchange_from_voltages(shifted, model.law, model.cross_or_null());
    const std::array<double, 3> dp{noise.voltage_offsets_v[0], noise.voltage_offsets_v[1],
                                   noise.voltage_offsets_v[2]};
    const auto factors = detuning_penalty(dp, model.sensitivity);
    for (Pair p : kPairs) component(j, p) *= factors[index(p)];
    return j;
}

inline FieldConfig noisy_fields(const DeviceModel &model, const NoiseDraw &noise) {
    FieldConfig f = model.fields;
    for (int d = 0; d < 3; ++d) f.gradients[d] += noise.gradients_hz[d];
    return f;
}

/// Piecewise-constant segments of a pulse (one segment for square pulses).
inline std::vector<Segment> pulse_segments(const VoltagePulse &pulse, const DeviceModel &model,
                                           const NoiseDraw &noise) {
    if (!std::isfinite(pulse.duration_s) || pulse.duration_s < 0.0)
        throw InvalidArgument("simulate_pulse: duration must be finite and >= 0");
    const ExchangeVector j = noisy_exchange(pulse.v_x, model, noise);
    const FieldConfig f = noisy_fields(model, noise);
    std::vector<Segment> segs;
    if (pulse.duration_s == 0.0) return segs;
    if (!pulse.ramp) {
        segs.push_back({build_hamiltonian(j, f), pulse.duration_s});
        return segs;
    }
    const RampProfile &r = *pulse.ramp;
    if (r.slices < 1) throw InvalidArgument("ramp: slices must be >= 1");
    double rise = 0.0, fall = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (r.rise_s[i] < 0.0 || r.fall_s[i] < 0.0) throw InvalidArgument("ramp: negative time");
        rise = std::max(rise, r.rise_s[i]);
        fall = std::max(fall, r.fall_s[i]);
    }
    const double total = pulse.duration_s;
    if (rise + fall > total) throw InvalidArgument("ramp: rise + fall exceeds pulse duration");
    auto envelope = [&](int pair, double t) {
        double e = 1.0;
        if (r.rise_s[pair] > 0.0 && t < r.rise_s[pair]) e = std::min(e, t / r.rise_s[pair]);
        const double to_end = total - t;
        if (r.fall_s[pair] > 0.0 && to_end < r.fall_s[pair]) e = std::min(e, to_end / r.fall_s[pair]);
        return e;
    };
    auto add_slice = [&](double t0, double t1) {
        if (t1 <= t0) return;
        const double mid = 0.5 * (t0 + t1);
        ExchangeVector js = j;
        for (Pair p : kPairs) component(js, p) *= envelope(index(p), mid);
        segs.push_back({build_hamiltonian(js, f), t1 - t0});
    };
    for (int s = 0; s < r.slices; ++s) add_slice(rise * s / r.slices, rise * (s + 1) / r.slices);
    add_slice(rise, total - fall);
    for (int s = 0; s < r.slices; ++s)
        add_slice(total - fall + fall * s / r.slices, total - fall + fall * (s + 1) / r.slices);
    return segs;
}

inline Matrix8c pulse_propagator(const VoltagePulse &pulse, const DeviceModel &model,
                                 const NoiseDraw &noise = {}) {
    const auto segs = pulse_segments(pulse, model, noise);
    return piecewise_propagator(segs);
}

inline DensityMatrix8 simulate_pulse(const DensityMatrix8 &rho, const VoltagePulse &pulse,
                                     const DeviceModel &model, const NoiseDraw &noise = {}) {
    const auto segs = pulse_segments(pulse, model, noise);
    return evolve_piecewise(rho, segs);
}

/// Free evolution with all exchange off (Zeeman and gradient terms only).
inline Matrix8c idle_propagator(double duration_s, const DeviceModel &model,
                                const NoiseDraw &noise = {}) {
    return propagator(build_hamiltonian({}, noisy_fields(model, noise)), duration_s);
}

/// Square voltage pulse of the model's duration that realizes an xz-plane
/// rotation of `angle` about `axis`. 1-J axes (z, n, m and their negatives)
/// use a single coupling; any other axis uses the first idle pair (13, 23, 12)
/// that keeps all couplings non-negative. The realized propagator is the
/// physical exp(-i H t); see complex_conjugate().
inline VoltagePulse realize_rotation(const Vec3 &axis, double angle, const DeviceModel &model) {
    const Vec3 a = axis.normalized();
    if (std::abs(a.y()) > 1e-9) throw InvalidArgument("realize_rotation: axis not in the xz-plane");
    double theta = wrap_positive(angle, kTwoPi);
    VoltagePulse pulse;
    pulse.duration_s = model.pulse_duration_s;
    if (theta < 1e-15) return pulse;  // all gates idle
    const double tau = model.pulse_duration_s;
    struct OneJ {
        Vec3 axis;
        Pair pair;
    };
    for (const OneJ &o : {OneJ{axes::z(), Pair::k13}, OneJ{axes::n(), Pair::k23},
                          OneJ{axes::m(), Pair::k12}}) {
        double dir = a.dot(o.axis);
        if (std::abs(std::abs(dir) - 1.0) > 1e-12) continue;
        const double th = dir > 0 ? theta : wrap_positive(-theta, kTwoPi);
        ExchangeVector j;
        component(j, o.pair) = th / (kTwoPi * tau);
        pulse.v_x = voltages_for_exchange(j, model.law, model.cross_or_null());
        return pulse;
    }
    const AxisAngle target{std::atan2(a.z(), a.x()), theta};
    for (IdlePair idle : {IdlePair::k13, IdlePair::k23, IdlePair::k12}) {
        try {
            const ExchangeVector j = exchange_for_rotation(target, tau, idle);
            pulse.v_x = voltages_for_exchange(j, model.law, model.cross_or_null());
            return pulse;
        } catch (const InvalidArgument &) {
        }
    }
    throw InvalidArgument("realize_rotation: axis not reachable");
}

}  // namespace aeon
