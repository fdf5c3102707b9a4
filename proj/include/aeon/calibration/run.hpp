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

// Closed-loop 2-J gate calibration: sweep, track the central peak through
// increasing germ powers, then fit the last map.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aeon/calibration/fit.hpp"
#include "aeon/calibration/germ.hpp"
#include "aeon/calibration/sweep.hpp"
#include "aeon/device_model.hpp"
#include "aeon/errors.hpp"
#include "aeon/executor.hpp"

namespace aeon {

inline const std::vector<int> kDefaultSchedule{1, 2, 4, 8, 16, 24};

struct CalibrationOptions {
    std::vector<int> schedule = kDefaultSchedule;
    int points = 51;                  // grid points per axis
    double half_width_v = 20e-3;      // window half width at N = 1
    double min_step_v = 1e-6;         // hardware voltage resolution
    int shots = 0;                    // 0: exact twirl
    SweepOptions sweep{};
    FitOptions fit{};
    std::optional<ExchangeLaw> nominal_law;  // initial guess; default: device law
    double min_peak_value = 0.5;      // weaker peaks count as lost
    bool keep_maps = false;
};

struct CalibrationStage {
    int n = 1;
    double half_width_v = 0.0;
    PeakLocation peak;
};

struct CalibrationResult {
    CalibrationTarget target;
    int q = 1;
    int s = 1;
    std::vector<CalibrationStage> stages;
    FitResult fit;
    AxisAngle achieved;
    std::vector<FidelityMap> maps;  // filled when keep_maps is set
};

/// Window half width for germ power n: halves per doubling of n, never
/// narrower than three resolution steps.
inline double stage_half_width(const CalibrationOptions &opt, int n) {
    return std::max(opt.half_width_v / n, 3.0 * opt.min_step_v);
}

inline CalibrationResult run_calibration(const AxisAngle &target_rot, const DeviceModel &device,
                                         const CalibrationOptions &opt = {},
                                         const Executor &exec = Executor{}) {
    if (opt.schedule.empty()) throw InvalidArgument("run_calibration: empty schedule");
    for (std::size_t k = 0; k < opt.schedule.size(); ++k) {
        if (opt.schedule[k] < 1) throw InvalidArgument("run_calibration: N must be >= 1");
        if (k > 0 && opt.schedule[k] <= opt.schedule[k - 1])
            throw InvalidArgument("run_calibration: schedule must be ascending");
    }
    const double tau = device.pulse_duration_s;
    const CalibrationTarget target = make_calibration_target(target_rot, tau);
    const ExchangeLaw nominal = opt.nominal_law.value_or(device.law);
    const auto pairs = target.pairs();
    const ExchangeCrossMatrix *cross = device.cross_or_null();

    CalibrationResult res;
    res.target = target;
    const ExchangeVoltages start = voltages_for_exchange(target.exchange(tau), nominal, cross);
    std::pair<double, double> center{*start[index(pairs[0])], *start[index(pairs[1])]};
    std::optional<std::pair<double, double>> previous = center;

    FidelityMap last;
    PeakLocation last_peak;
    for (std::size_t k = 0; k < opt.schedule.size(); ++k) {
        const int n = opt.schedule[k];
        const GermConfig cfg = make_germ_config(target.target, target.precal, n, opt.shots);
        res.q = cfg.q;
        res.s = cfg.s;
        const double hw = stage_half_width(opt, n);
        const SweepGrid grid = SweepGrid::centered(target.idle, center.first, center.second, hw, opt.points);
        SweepOptions so = opt.sweep;
        so.stage = static_cast<std::uint64_t>(k);
        FidelityMap map = sweep_fidelity(grid, cfg, device, so, exec);
        PeakLocation peak;
        try {
            peak = find_peak(map, previous);
        } catch (const DetectionError &e) {
            throw CalibrationDiverged(std::string("stage N=") + std::to_string(n) + ": " + e.what(), k);
        }
        const double step = 2.0 * hw / (opt.points - 1);
        const bool at_edge = std::abs(peak.va - center.first) > hw - step ||
                             std::abs(peak.vb - center.second) > hw - step;
        if (at_edge || peak.peak_value < opt.min_peak_value)
            throw CalibrationDiverged("stage N=" + std::to_string(n) + ": central peak lost", k);
        res.stages.push_back({n, hw, peak});
        center = {peak.va, peak.vb};
        previous = center;
        last_peak = peak;
        if (opt.keep_maps) res.maps.push_back(map);
        last = std::move(map);
    }

    const GermConfig final_cfg = make_germ_config(target.target, target.precal, opt.schedule.back(), opt.shots);
    res.fit = fit_final(last, final_cfg, target, nominal, last_peak, tau, cross, opt.fit);
    res.achieved = exchange_to_rotation(exchange_from_voltages(res.fit.final_voltages, device.law, cross), tau);
    return res;
}

/// Signed angle differences achieved - target, with phi wrapped to (-pi, pi].
inline std::pair<double, double> calibration_error(const CalibrationResult &r) {
    return {wrap_pi(r.achieved.phi - r.target.target.phi), r.achieved.theta - r.target.target.theta};
}

inline nlohmann::ordered_json calibration_json(const CalibrationResult &r) {
    nlohmann::ordered_json j;
    j["target"] = {{"phi", r.target.target.phi}, {"theta", r.target.target.theta}};
    j["idle_pair"] = kPairNames[index(idle_as_pair(r.target.idle))];
    j["precal"] = {{"eta", r.target.precal.phi}, {"chi", r.target.precal.theta}};
    j["q"] = r.q;
    j["s"] = r.s;
    const auto pairs = r.target.pairs();
    auto stages = nlohmann::ordered_json::array();
    for (const auto &s : r.stages) {
        nlohmann::ordered_json st;
        st["N"] = s.n;
        st["window"] = s.half_width_v;
        st["peak_v"] = {s.peak.va, s.peak.vb};
        st["stderr"] = {s.peak.stderr_a, s.peak.stderr_b};
        st["peak_value"] = s.peak.peak_value;
        stages.push_back(st);
    }
    j["stages"] = stages;
    nlohmann::ordered_json fit;
    for (Pair p : pairs) {
        const auto &l = r.fit.law[p];
        fit[std::string("pair_") + kPairNames[index(p)]] = {{"A", l.a_hz}, {"B", l.b_per_v}, {"C", l.c}};
    }
    fit["chi"] = r.fit.chi;
    fit["residual"] = r.fit.rms;
    j["fit"] = fit;
    nlohmann::ordered_json fin;
    for (Pair p : pairs)
        fin[std::string("v_x") + kPairNames[index(p)]] = *r.fit.final_voltages[index(p)];
    fin["phi"] = r.achieved.phi;
    fin["theta"] = r.achieved.theta;
    j["final"] = fin;
    return j;
}

}  // namespace aeon
