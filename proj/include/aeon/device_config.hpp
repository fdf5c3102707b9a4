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

// JSON device configuration.
//
//   {
//     "compensation_matrix": [[...6...], ... 6 rows],
//     "cross_matrix": [[...3...], ... 3 rows],          // gate order X12, X13, X23
//     "use_cross_compensation": false,
//     "exchange_law": {"12": {"A_hz":..,"B_per_v":..,"C":..}, "23": {...}, "13": {...}},
//     "dss": {"location_v": [p1, p2, p3],
//             "curvature": {"12": {"tilt_per_v2":..,"dimple_per_v2":..}, ...}},
//     "noise": {"voltage_sigma_v": [6], "gradient_sigma_hz": [3], "seed": 0,
//               "policy": "per-shot" | "per-sequence"},
//     "fields": {"global_b_t": 0.003, "gradients_hz": [3]},
//     "pulse_duration_s": 1e-8,
//     "idle_time_s": 0
//   }
//
// Every key except exchange_law is optional.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "aeon/device_model.hpp"
#include "aeon/errors.hpp"

namespace aeon {

namespace detail {

template <typename T>
T get_or(const nlohmann::json &j, const char *key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

}  // namespace detail

inline DeviceModel device_from_json(const nlohmann::json &j) {
    try {
        DeviceModel m;
        if (j.contains("compensation_matrix")) {
            const auto &rows = j.at("compensation_matrix");
            if (rows.size() != 6) throw ConfigError("compensation_matrix must be 6x6");
            Matrix6d c;
            for (int r = 0; r < 6; ++r) {
                if (rows[r].size() != 6) throw ConfigError("compensation_matrix must be 6x6");
                for (int k = 0; k < 6; ++k) c(r, k) = rows[r][k].get<double>();
            }
            m.compensation = CompensationMatrix(c);
        }
        if (j.contains("cross_matrix")) {
            const auto &rows = j.at("cross_matrix");
            if (rows.size() != 3) throw ConfigError("cross_matrix must be 3x3");
            Eigen::Matrix3d d;
            for (int r = 0; r < 3; ++r) {
                if (rows[r].size() != 3) throw ConfigError("cross_matrix must be 3x3");
                for (int k = 0; k < 3; ++k) d(r, k) = rows[r][k].get<double>();
            }
            m.cross = ExchangeCrossMatrix(d);
        }
        m.use_cross_compensation = detail::get_or(j, "use_cross_compensation", false);

        if (!j.contains("exchange_law")) throw ConfigError("missing key exchange_law");
        const auto &law = j.at("exchange_law");
        for (int i = 0; i < 3; ++i) {
            if (!law.contains(kPairNames[i]))
                throw ConfigError(std::string("exchange_law missing pair ") + kPairNames[i]);
            const auto &p = law.at(kPairNames[i]);
            m.law.pairs[i] = {p.at("A_hz").get<double>(), p.at("B_per_v").get<double>(),
                              p.at("C").get<double>()};
        }

        if (j.contains("dss")) {
            const auto &dss = j.at("dss");
            if (dss.contains("location_v"))
                m.sensitivity.dss_location_v = dss.at("location_v").get<std::array<double, 3>>();
            if (dss.contains("curvature")) {
                const auto &cv = dss.at("curvature");
                for (int i = 0; i < 3; ++i) {
                    if (!cv.contains(kPairNames[i])) continue;
                    const auto &c = cv.at(kPairNames[i]);
                    m.sensitivity.curvature[i] = {detail::get_or(c, "tilt_per_v2", 0.0),
                                                  detail::get_or(c, "dimple_per_v2", 0.0)};
                }
            }
        }
        if (j.contains("noise")) {
            const auto &n = j.at("noise");
            if (n.contains("voltage_sigma_v"))
                m.noise.voltage_sigma_v = n.at("voltage_sigma_v").get<std::array<double, 6>>();
            if (n.contains("gradient_sigma_hz"))
                m.noise.gradient_sigma_hz = n.at("gradient_sigma_hz").get<std::array<double, 3>>();
            m.noise.seed = detail::get_or<std::uint64_t>(n, "seed", 0);
            const std::string policy = detail::get_or<std::string>(n, "policy", "per-shot");
            if (policy == "per-shot") m.noise.policy = ResamplePolicy::kPerShot;
            else if (policy == "per-sequence") m.noise.policy = ResamplePolicy::kPerSequence;
            else throw ConfigError("noise.policy must be per-shot or per-sequence");
        }
        if (j.contains("fields")) {
            const auto &f = j.at("fields");
            m.fields.global_b = detail::get_or(f, "global_b_t", 0.0);
            if (f.contains("gradients_hz"))
                m.fields.gradients = f.at("gradients_hz").get<std::array<double, 3>>();
        }
        m.pulse_duration_s = detail::get_or(j, "pulse_duration_s", 10e-9);
        m.idle_time_s = detail::get_or(j, "idle_time_s", 0.0);
        m.validate();
        return m;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("device config: ") + e.what());
    } catch (const InvalidArgument &e) {
        throw ConfigError(std::string("device config: ") + e.what());
    }
}

inline nlohmann::ordered_json device_to_json(const DeviceModel &m) {
    nlohmann::ordered_json j;
    auto rows6 = nlohmann::ordered_json::array();
    for (int r = 0; r < 6; ++r) {
        auto row = nlohmann::ordered_json::array();
        for (int k = 0; k < 6; ++k) row.push_back(m.compensation.matrix()(r, k));
        rows6.push_back(row);
    }
    j["compensation_matrix"] = rows6;
    auto rows3 = nlohmann::ordered_json::array();
    for (int r = 0; r < 3; ++r) {
        auto row = nlohmann::ordered_json::array();
        for (int k = 0; k < 3; ++k) row.push_back(m.cross.matrix()(r, k));
        rows3.push_back(row);
    }
    j["cross_matrix"] = rows3;
    j["use_cross_compensation"] = m.use_cross_compensation;
    for (int i = 0; i < 3; ++i) {
        const auto &l = m.law.pairs[i];
        j["exchange_law"][kPairNames[i]] = {{"A_hz", l.a_hz}, {"B_per_v", l.b_per_v}, {"C", l.c}};
    }
    j["dss"]["location_v"] = m.sensitivity.dss_location_v;
    for (int i = 0; i < 3; ++i) {
        const auto &c = m.sensitivity.curvature[i];
        j["dss"]["curvature"][kPairNames[i]] = {{"tilt_per_v2", c.tilt_per_v2},
                                                {"dimple_per_v2", c.dimple_per_v2}};
    }
    j["noise"]["voltage_sigma_v"] = m.noise.voltage_sigma_v;
    j["noise"]["gradient_sigma_hz"] = m.noise.gradient_sigma_hz;
    j["noise"]["seed"] = m.noise.seed;
    j["noise"]["policy"] = m.noise.policy == ResamplePolicy::kPerShot ? "per-shot" : "per-sequence";
    j["fields"]["global_b_t"] = m.fields.global_b;
    j["fields"]["gradients_hz"] = m.fields.gradients;
    j["pulse_duration_s"] = m.pulse_duration_s;
    j["idle_time_s"] = m.idle_time_s;
    return j;
}

inline DeviceModel load_device(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open device config: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("device config " + path + ": " + e.what());
    }
    return device_from_json(j);
}

}  // namespace aeon
