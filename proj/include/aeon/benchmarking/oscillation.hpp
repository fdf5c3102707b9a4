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

// Gaussian-damped oscillation fit:
//     P(t) = B + A cos(Omega t + phi0) exp(-(t / T)^2),  N_osc = Omega T / 2pi.

#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "aeon/errors.hpp"
#include "aeon/least_squares.hpp"
#include "aeon/linalg.hpp"

namespace aeon {

struct OscillationFit {
    double omega = 0.0;  // rad/s
    double decay_time = std::numeric_limits<double>::infinity();  // T; infinity when undamped
    double n_osc = std::numeric_limits<double>::infinity();
    double amplitude = 0.0;
    double offset = 0.0;
    double phase = 0.0;
    double rms = 0.0;

    bool unbounded() const { return std::isinf(n_osc); }
};

namespace detail {

// Periodogram amplitude of the mean-removed record at angular frequency w.
inline double sinusoid_power(std::span<const double> t, std::span<const double> y, double mean, double w) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        c += (y[i] - mean) * std::cos(w * t[i]);
        s += (y[i] - mean) * std::sin(w * t[i]);
    }
    return 2.0 * std::hypot(c, s) / static_cast<double>(t.size());
}

}  // namespace detail

/// Needs >= 8 samples and >= 2 oscillations within the span.
inline OscillationFit fit_oscillation_decay(std::span<const double> t, std::span<const double> p) {
    if (t.size() != p.size()) throw InvalidArgument("fit_oscillation_decay: size mismatch");
    if (t.size() < 8) throw FitFailure("fit_oscillation_decay: need at least 8 samples", 0.0);
    const double t0 = t.front(), span = t.back() - t.front();
    if (!(span > 0.0)) throw InvalidArgument("fit_oscillation_decay: times must increase");
    const double dt = span / (t.size() - 1);

    double mean = 0.0;
    for (double v : p) mean += v;
    mean /= static_cast<double>(p.size());

    // Coarse frequency from a dense scan below Nyquist.
    const double w_max = 0.95 * kPi / dt;
    const int scan = static_cast<int>(std::max<std::size_t>(400, 8 * t.size()));
    double best_w = 0.0, best_amp = -1.0;
    for (int k = 1; k <= scan; ++k) {
        const double w = w_max * k / scan;
        const double amp = detail::sinusoid_power(t, p, mean, w);
        if (amp > best_amp) {
            best_amp = amp;
            best_w = w;
        }
    }
    if (best_w * span / kTwoPi < 2.0)
        throw FitFailure("fit_oscillation_decay: fewer than 2 oscillations in the record", 0.0);

    // Phase at t0 from the linear fit at the coarse frequency.
    double c_sum = 0.0, s_sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        c_sum += (p[i] - mean) * std::cos(best_w * (t[i] - t0));
        s_sum += (p[i] - mean) * std::sin(best_w * (t[i] - t0));
    }
    const double phi_start = std::atan2(-s_sum, c_sum);

    // Parameters: B, A, Omega (scaled), phi0 at t0, g with 1/T^2 = g^2 / span^2.
    const ResidualFn fn = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        const double w = x(2) / span;
        const double g2 = x(4) * x(4) / (span * span);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double s = t[i] - t0;
            r(i) = x(0) + x(1) * std::cos(w * s + x(3)) * std::exp(-g2 * t[i] * t[i]) - p[i];
        }
    };
    LsqResult best;
    for (double g0 : {0.3, 1.0, 2.0}) {
        Eigen::VectorXd x0(5);
        x0 << mean, best_amp, best_w * span, phi_start, g0;
        const LsqResult res = least_squares(fn, x0, static_cast<int>(t.size()));
        if (std::isfinite(res.rms) && res.rms < best.rms) best = res;
    }
    if (!std::isfinite(best.rms)) throw FitFailure("fit_oscillation_decay: fit did not converge", best.rms);

    OscillationFit out;
    out.offset = best.params(0);
    out.amplitude = best.params(1);
    out.omega = std::abs(best.params(2) / span);
    out.phase = best.params(3) - out.omega * t0;
    out.rms = best.rms;
    const double g = std::abs(best.params(4));
    // Decay slower than 1e-3 of the record length counts as undamped.
    if (g < 1e-3) return out;
    out.decay_time = span / g;
    out.n_osc = out.omega * out.decay_time / kTwoPi;
    return out;
}

}  // namespace aeon
