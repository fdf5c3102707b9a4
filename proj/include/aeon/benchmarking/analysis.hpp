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

// Decay fits for blind RB, interleaved subtraction, and report formats.

#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aeon/benchmarking/rb.hpp"
#include "aeon/errors.hpp"
#include "aeon/least_squares.hpp"

namespace aeon {

struct RbFit {
    double a = 1.0;
    double p = 1.0;
    double c0 = 0.0;
    double c1 = 1.0;
    double lambda = 1.0;
    double err_per_clifford = 0.0;
    double leak_per_clifford = 0.0;
    double err_per_pulse = 0.0;
    double residual = 0.0;
};

struct RbResult {
    RbData data;
    RbFit fit;
};

namespace detail {

// Least-squares a x^N on (n, y); x starts from a log-linear estimate.
inline std::pair<double, double> fit_power(const std::vector<double> &n, const std::vector<double> &y,
                                           double &rms) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(y[i] > 1e-9)) continue;
        const double ly = std::log(y[i]);
        sx += n[i];
        sy += ly;
        sxx += n[i] * n[i];
        sxy += n[i] * ly;
        ++m;
    }
    double slope = 0.0, icpt = 0.0;
    if (m >= 2 && m * sxx - sx * sx > 0) {
        slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        icpt = (sy - slope * sx) / m;
    }
    Eigen::VectorXd x0(2);
    x0 << std::exp(icpt), std::exp(slope);
    const ResidualFn fn = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
        for (std::size_t i = 0; i < n.size(); ++i) r(i) = x(0) * std::pow(x(1), n[i]) - y[i];
    };
    const LsqResult res = least_squares(fn, x0, static_cast<int>(n.size()));
    rms = res.rms;
    return {res.params(0), res.params(1)};
}

}  // namespace detail

// Thresholds for keeping a floating asymptote in the sum fit.
inline constexpr double kAsymptoteGain = 0.7;
inline constexpr double kAsymptoteChi2 = 9.0;
inline constexpr double kAsymptoteDecay = 0.5;

/// Fits (P_id - P_flip) = a p^N and (P_id + P_flip) = c0 + c1 lambda^N.
/// Error per Clifford r = (1 - p)/2 + (1 - lambda)/2, leakage 1 - lambda,
/// error per pulse r / avg_pulses.
inline RbFit fit_rb(const RbData &data) {
    const auto &pd = data.per_depth;
    if (pd.size() < 3) throw InvalidArgument("fit_rb: need at least 3 depths");
    std::vector<double> n, diff, sum;
    for (const auto &d : pd) {
        n.push_back(d.n);
        diff.push_back(d.p0_id - d.p0_flip);
        sum.push_back(d.p0_id + d.p0_flip);
    }
    RbFit f;
    double rms_d = 0.0;
    std::tie(f.a, f.p) = detail::fit_power(n, diff, rms_d);

    double rms_s = 0.0;
    const auto [lo, hi] = std::minmax_element(sum.begin(), sum.end());
    if (*hi - *lo < 1e-12) {
        f.c0 = 0.0;
        f.c1 = sum.front();
        f.lambda = 1.0;
    } else {
        double r0 = 0.0;
        const auto [c1_0, lam_0] = detail::fit_power(n, sum, r0);
        Eigen::VectorXd x0(3);
        x0 << 0.0, c1_0, lam_0;
        const ResidualFn fn = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) {
            for (std::size_t i = 0; i < n.size(); ++i) r(i) = x(0) + x(1) * std::pow(x(2), n[i]) - sum[i];
        };
        const LsqResult res = least_squares(fn, x0, static_cast<int>(n.size()));
        // The asymptote is identifiable only once the sampled depths reach
        // well into the decay.
        bool keep = std::isfinite(res.rms) && res.params(2) > 0.0 && res.params(2) < 1.0 && res.params(1) > 1e-2 &&
                    std::pow(res.params(2), n.back()) < kAsymptoteDecay;
        if (keep) {
            // Likelihood-ratio test on the sum's standard errors; without
            // errors, require a clear drop in RMS.
            double chi_pow = 0.0, chi_full = 0.0;
            bool weighted = true;
            for (std::size_t i = 0; i < n.size(); ++i) {
                const double sig = std::hypot(pd[i].stderr_id, pd[i].stderr_flip);
                if (!(sig > 0.0)) weighted = false;
                const double dp = c1_0 * std::pow(lam_0, n[i]) - sum[i];
                const double df = res.params(0) + res.params(1) * std::pow(res.params(2), n[i]) - sum[i];
                chi_pow += weighted ? dp * dp / (sig * sig) : 0.0;
                chi_full += weighted ? df * df / (sig * sig) : 0.0;
            }
            keep = weighted ? chi_pow - chi_full > kAsymptoteChi2 : res.rms < kAsymptoteGain * r0;
        }
        if (keep) {
            f.c0 = res.params(0);
            f.c1 = res.params(1);
            f.lambda = res.params(2);
            rms_s = res.rms;
        } else {
            f.c0 = 0.0;
            f.c1 = c1_0;
            f.lambda = lam_0;
            rms_s = r0;
        }
    }
    if (!std::isfinite(f.p) || !std::isfinite(f.lambda) || !(f.p > 0.0) || !(f.lambda > 0.0))
        throw FitFailure("fit_rb: decay fit did not converge", std::hypot(rms_d, rms_s));
    f.residual = std::hypot(rms_d, rms_s);
    f.err_per_clifford = 0.5 * (1.0 - f.p) + 0.5 * (1.0 - f.lambda);
    f.leak_per_clifford = 1.0 - f.lambda;
    f.err_per_pulse = data.avg_pulses > 0.0 ? f.err_per_clifford / data.avg_pulses : 0.0;
    return f;
}

inline RbResult benchmark(const RbConfig &cfg, const DeviceModel &device, const Executor &exec = Executor{}) {
    const CliffordGroup group = make_clifford_set(cfg.set);
    const auto seqs = generate_sequences(cfg, group);
    RbResult r;
    r.data = run_rb(seqs, cfg, device, exec);
    r.fit = fit_rb(r.data);
    return r;
}

/// One Table-S1 style row: excess error of an interleaved gate.
struct InterleavedResult {
    std::string label;
    RbResult reference;
    RbResult interleaved;
    double gate_error = 0.0;     // interleaved minus reference error per Clifford
    double leakage_error = 0.0;  // may be negative
};

inline InterleavedResult interleaved_rb(const InterleavedGate &gate, const RbConfig &cfg, const DeviceModel &device,
                                        const Executor &exec = Executor{}) {
    RbConfig ref = cfg;
    ref.interleaved.reset();
    RbConfig inter = cfg;
    inter.interleaved = gate;
    InterleavedResult out;
    out.label = gate.label;
    out.reference = benchmark(ref, device, exec);
    out.interleaved = benchmark(inter, device, exec);
    out.gate_error = out.interleaved.fit.err_per_clifford - out.reference.fit.err_per_clifford;
    out.leakage_error = out.interleaved.fit.leak_per_clifford - out.reference.fit.leak_per_clifford;
    return out;
}

inline nlohmann::ordered_json rb_json(const RbResult &r, const std::string &config_hash) {
    nlohmann::ordered_json j;
    j["config_hash"] = config_hash;
    auto arr = nlohmann::ordered_json::array();
    for (const auto &d : r.data.per_depth) {
        nlohmann::ordered_json e;
        e["N"] = d.n;
        e["p0_id"] = d.p0_id;
        e["p0_flip"] = d.p0_flip;
        e["stderr"] = {d.stderr_id, d.stderr_flip};
        e["leakage"] = d.leakage;
        arr.push_back(e);
    }
    j["per_depth"] = arr;
    j["fit"] = {{"a", r.fit.a},
                {"p", r.fit.p},
                {"c0", r.fit.c0},
                {"c1", r.fit.c1},
                {"lambda", r.fit.lambda},
                {"err_per_clifford", r.fit.err_per_clifford},
                {"leak_per_clifford", r.fit.leak_per_clifford},
                {"err_per_pulse", r.fit.err_per_pulse},
                {"avg_pulses", r.data.avg_pulses},
                {"residual", r.fit.residual}};
    return j;
}

/// Decay curves: one row per depth.
inline void write_rb_csv(std::ostream &os, const RbResult &r) {
    os << "N_cliffords,p0_id,p0_flip,stderr_id,stderr_flip,leakage_population\n";
    os.precision(17);
    for (const auto &d : r.data.per_depth)
        os << d.n << ',' << d.p0_id << ',' << d.p0_flip << ',' << d.stderr_id << ',' << d.stderr_flip << ','
           << d.leakage << '\n';
}

/// Columns: axis, angle, total error and leakage error in units of 1e-3.
struct TableRow {
    std::string axis;
    std::string angle;
    double total_error_e3 = 0.0;
    double leakage_error_e3 = 0.0;
};

inline TableRow table_row(const std::string &axis, const std::string &angle, const InterleavedResult &r) {
    return {axis, angle, 1e3 * r.gate_error, 1e3 * r.leakage_error};
}

inline void write_table_csv(std::ostream &os, const std::vector<TableRow> &rows) {
    os << "axis,angle,total_error_1e-3,leakage_error_1e-3\n";
    os.precision(6);
    for (const auto &r : rows) os << r.axis << ',' << r.angle << ',' << r.total_error_e3 << ',' << r.leakage_error_e3 << '\n';
}

}  // namespace aeon
