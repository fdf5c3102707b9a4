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

#include <random>

#include <gtest/gtest.h>

#include "aeon/device_config.hpp"
#include "aeon/device_model.hpp"
#include "aeon/su2.hpp"

namespace aeon {
namespace {

TEST(DeviceModel, LawInversion) {
    ExchangeLaw law;
    law.pairs[0] = {1e6, 52.0, 0.1};
    for (double j : {1e6, 5e7, 2e8}) EXPECT_NEAR(law.exchange(Pair::k12, law.voltage(Pair::k12, j)) / j, 1.0, 1e-12);
    EXPECT_THROW(law.voltage(Pair::k12, 0.0), InvalidArgument);
    EXPECT_THROW(law.exchange(Pair::k12, 1e6), RangeError);
}

TEST(DeviceModel, CrossCompensationRoundTrip) {
    const ExchangeCrossMatrix d = ExchangeCrossMatrix::measured();
    ExchangeLaw law;
    const ExchangeVector j{40e6, 0.0, 65e6};
    const ExchangeVoltages v = voltages_for_exchange(j, law, &d);
    EXPECT_FALSE(v[index(Pair::k23)].has_value());
    const ExchangeVector back = exchange_from_voltages(v, law, &d);
    EXPECT_NEAR(back.j12 / j.j12, 1.0, 1e-12);
    EXPECT_NEAR(back.j13 / j.j13, 1.0, 1e-12);
    EXPECT_EQ(back.j23, 0.0);
}

TEST(DeviceModel, CompensationRoundTrip) {
    const CompensationMatrix c = CompensationMatrix::measured();
    Vector6d p;
    p << 0.1, -0.2, 0.3, 0.05, 0.06, 0.07;
    EXPECT_LT((c.devirtualize(c.virtualize(p)) - p).norm(), 1e-14);
    Matrix6d bad = Matrix6d::Identity();
    bad(3, 0) = 0.1;
    EXPECT_THROW(CompensationMatrix{bad}, ConfigError);
}

TEST(DeviceModel, RealizedPulseMatchesRotation) {
    DeviceModel dev;
    for (const Vec3 &axis : {axes::x(), Vec3(-axes::x()), Vec3(-axes::z()), axes::z(), axes::n(), axes::m()})
        for (double th : {kPi / 2, kPi, 3 * kPi / 2}) {
            const Matrix8c u = pulse_propagator(realize_rotation(axis, th, dev), dev);
            const Matrix2c blk = qubit_subspace_block(u, 0);
            const Rotation got = complex_conjugate(Rotation::from_unitary(blk));
            EXPECT_TRUE(got.approx_equal(Rotation::about(axis, th), 1e-9));
        }
}

TEST(DeviceModel, NoiseStreamIsStable) {
    NoiseConfig cfg;
    cfg.voltage_sigma_v = {0, 0, 0, 1e-5, 1e-5, 1e-5};
    Rng a = stream(3, {1, 2}), b = stream(3, {1, 2});
    const NoiseDraw da = sample_noise(cfg, a), db = sample_noise(cfg, b);
    EXPECT_EQ(da.voltage_offsets_v, db.voltage_offsets_v);
    EXPECT_EQ(da.voltage_offsets_v[0], 0.0);
}

TEST(DeviceConfig, JsonRoundTrip) {
    DeviceModel m;
    m.law.pairs[1] = {2e6, 40.0, -0.3};
    m.noise.gradient_sigma_hz = {1e5, 2e5, 3e5};
    m.use_cross_compensation = true;
    const DeviceModel back = device_from_json(nlohmann::json::parse(device_to_json(m).dump()));
    EXPECT_EQ(device_to_json(back).dump(), device_to_json(m).dump());
}

TEST(DeviceConfig, RejectsBadConfig) {
    nlohmann::json j = nlohmann::json::parse(device_to_json(DeviceModel{}).dump());
    j["exchange_law"]["12"]["B_per_v"] = -1.0;
    EXPECT_THROW(device_from_json(j), ConfigError);
    j.erase("exchange_law");
    EXPECT_THROW(device_from_json(j), ConfigError);
    EXPECT_THROW(load_device("/nonexistent/device.json"), ConfigError);
}

}  // namespace
}  // namespace aeon
