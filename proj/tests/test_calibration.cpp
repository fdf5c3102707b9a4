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
#include <sstream>

#include <gtest/gtest.h>

#include "aeon/calibration.hpp"
#include "oracles.hpp"

namespace aeon {
namespace {

DeviceModel test_device() {
    DeviceModel dev;
    dev.law.pairs[0] = {1e6, 52.0, 0.10};
    dev.law.pairs[1] = {1e6, 55.0, -0.05};
    dev.law.pairs[2] = {1e6, 50.0, 0.05};
    return dev;
}

ExchangeLaw detuned_law(const ExchangeLaw &truth) {
    ExchangeLaw law = truth;
    for (auto &p : law.pairs) {
        p.c += 0.03;
        p.b_per_v *= 1.005;
    }
    return law;
}

TEST(Germ, Multiplicity) {
    EXPECT_EQ(germ_multiplicity(kPi), std::make_pair(1, 1));
    EXPECT_EQ(germ_multiplicity(kPi / 2), std::make_pair(2, 1));
    EXPECT_EQ(germ_multiplicity(3 * kPi / 2), std::make_pair(2, 3));
    EXPECT_EQ(germ_multiplicity(kPi / 3), std::make_pair(3, 1));
    EXPECT_THROW(germ_multiplicity(0.3), InvalidArgument);
    EXPECT_THROW(germ_multiplicity(2 * kPi), InvalidArgument);
}

TEST(Germ, LayoutLength) {
    for (int q : {1, 2, 3})
        for (int n : {1, 4, 24}) EXPECT_EQ(germ_layout(q, n).size(), static_cast<std::size_t>(4 * q * n + 2 * n));
}

TEST(Germ, ComposedMatchesOracle) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int t = 0; t < 100; ++t) {
        const double phi = u(rng), th = u(rng) + kPi, eta = u(rng), chi = u(rng) + kPi;
        const int q = 1 + t % 3, n = 1 + t % 7;
        const Rotation r = compose_germ(Rotation::from({phi, th}), Rotation::from({eta, chi}), q, n);
        EXPECT_LT(oracle::phase_infidelity(to_unitary(r), oracle::germ(phi, th, eta, chi, q, n)), 1e-10);
    }
}

TEST(Twirl, Examples) {
    const CliffordGroup g = compile_clifford_group_1j({axes::z(), axes::n()});
    EXPECT_NEAR(twirl_fidelity(Rotation::identity(), g).estimate, 1.0, 1e-15);
    EXPECT_NEAR(twirl_fidelity(Rotation::about(axes::y(), kPi), g).estimate, 1.0 / 3.0, 1e-14);
    const double e = 1e-3;
    EXPECT_NEAR(twirl_fidelity(Rotation::about(axes::x(), e), g).estimate, 1.0 - e * e / 6.0, 1e-12);
    EXPECT_NEAR(oracle::twirl_enumerated(oracle::rot(0.3, 1.1)), oracle::twirl_closed_form(oracle::rot(0.3, 1.1)), 1e-14);
}

TEST(Twirl, SampledEstimateIsConsistent) {
    const CliffordGroup g = two_j_clifford_group();
    const Rotation u = Rotation::about(axes::x(), 0.5);
    Rng rng(4);
    const TwirlEstimate est = twirl_fidelity(u, g, 2000, &rng);
    EXPECT_NEAR(est.estimate, twirl_fidelity(u, g).estimate, 5 * est.stderr_);
    EXPECT_THROW(twirl_fidelity(u, g, 10, nullptr), InvalidArgument);
}

TEST(AnalyticFidelity, MatchesOracleTwirl) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double worst = 0.0;
    for (int t = 0; t < 300; ++t) {
        const double phi = u(rng), th = u(rng) + kPi, eta = u(rng), chi = u(rng) + kPi;
        const int q = 1 + t % 3, n = 1 + t % 24;
        const double ref = oracle::twirl_closed_form(oracle::germ(phi, th, eta, chi, q, n));
        worst = std::max(worst, std::abs(analytic_fidelity(phi, th, eta, chi, n, q) - ref));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(AnalyticFidelity, PerfectCalibrationIsOne) {
    for (double phi : {0.0, kPi, -kPi / 2})
        for (double th : {kPi / 2, kPi, 3 * kPi / 2}) {
            const AxisAngle tgt{phi, th};
            for (int n = 1; n <= 24; ++n) EXPECT_NEAR(analytic_fidelity(tgt, make_germ_config(tgt, default_precal(tgt), n)), 1.0, 1e-12);
        }
}

// The literal reading of the closed form disagrees with the explicit twirl:
// for odd N at perfect calibration it gives 1/3 instead of 1.
TEST(AnalyticFidelity, LiteralConventionRegression) {
    const double phi = kPi / 2, eta = kPi, chi = kPi;
    for (int n : {1, 3, 5}) {
        EXPECT_NEAR(analytic_fidelity(phi, kPi, eta, chi, n, 1, FidelityConvention::kLiteral), 1.0 / 3.0, 1e-12);
        EXPECT_NEAR(analytic_fidelity(phi, kPi, eta, chi, n, 1, FidelityConvention::kAccumulated), 1.0, 1e-12);
    }
}

FidelityMap bump_map(std::vector<std::array<double, 4>> bumps, int points = 41) {
    FidelityMap m;
    m.grid = SweepGrid::centered(IdlePair::k13, 0.0, 0.0, 1.0, points);
    for (double a : m.grid.va)
        for (double b : m.grid.vb) {
            double f = 0.0;
            for (const auto &bp : bumps)
                f += bp[0] * std::exp(-((a - bp[1]) * (a - bp[1]) + (b - bp[2]) * (b - bp[2])) / (2 * bp[3] * bp[3]));
            m.fidelity.push_back(f);
            m.stderr_.push_back(0.0);
        }
    return m;
}

TEST(PeakFinder, SyntheticBumpCentroid) {
    const FidelityMap m = bump_map({{{1.0, 0.137, -0.222, 0.15}}});
    const double cell = m.grid.va[1] - m.grid.va[0];
    const PeakLocation p = find_peak(m);
    EXPECT_LT(std::abs(p.va - 0.137), 0.1 * cell);
    EXPECT_LT(std::abs(p.vb + 0.222), 0.1 * cell);
}

TEST(PeakFinder, NearestRule) {
    const FidelityMap m = bump_map({{{1.0, -0.5, -0.5, 0.1}}, {{0.9, 0.5, 0.5, 0.1}}});
    EXPECT_LT(find_peak(m).va, 0.0);
    EXPECT_GT(find_peak(m, std::pair{0.4, 0.4}).va, 0.0);
}

TEST(PeakFinder, FlatMapThrows) {
    FidelityMap m = bump_map({});
    for (double &f : m.fidelity) f = 0.5;
    EXPECT_THROW(find_peak(m), DetectionError);
}

TEST(Sweep, BackendsAgreeWhenNoiseless) {
    DeviceModel dev = test_device();
    dev.fields.global_b = 0.0;
    const AxisAngle tgt{0.0, kPi};
    const CalibrationTarget t = make_calibration_target(tgt, dev.pulse_duration_s);
    const ExchangeVoltages v = voltages_for_exchange(t.exchange(dev.pulse_duration_s), dev.law);
    const auto pr = t.pairs();
    const SweepGrid grid = SweepGrid::centered(t.idle, *v[index(pr[0])], *v[index(pr[1])], 2e-3, 5);
    const GermConfig cfg = make_germ_config(tgt, t.precal, 2);
    SweepOptions full;
    full.backend = SweepBackend::kFullSpin;
    const FidelityMap a = sweep_fidelity(grid, cfg, dev);
    const FidelityMap b = sweep_fidelity(grid, cfg, dev, full);
    const FidelityMap c = analytic_map(grid, cfg, dev.law, dev.pulse_duration_s);
    for (std::size_t k = 0; k < a.fidelity.size(); ++k) {
        EXPECT_NEAR(a.fidelity[k], b.fidelity[k], 1e-9);
        EXPECT_NEAR(a.fidelity[k], c.fidelity[k], 1e-9);
    }
}

TEST(Sweep, ThreadCountDoesNotChangeSampledMap) {
    DeviceModel dev = test_device();
    dev.noise.voltage_sigma_v = {0, 0, 0, 1e-5, 1e-5, 1e-5};
    const AxisAngle tgt{-kPi / 2, kPi};
    const CalibrationTarget t = make_calibration_target(tgt, dev.pulse_duration_s);
    const ExchangeVoltages v = voltages_for_exchange(t.exchange(dev.pulse_duration_s), dev.law);
    const auto pr = t.pairs();
    const SweepGrid grid = SweepGrid::centered(t.idle, *v[index(pr[0])], *v[index(pr[1])], 2e-3, 6);
    const GermConfig cfg = make_germ_config(tgt, t.precal, 1, 5);
    SweepOptions o;
    o.seed = 9;
    const FidelityMap a = sweep_fidelity(grid, cfg, dev, o, Executor(1));
    const FidelityMap b = sweep_fidelity(grid, cfg, dev, o, Executor(3));
    EXPECT_EQ(a.fidelity, b.fidelity);
    std::ostringstream os;
    write_map_csv(os, a);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "v_x12_V,v_x23_V,fidelity,stderr");
}

TEST(Calibration, ConvergesFromDetunedLaw) {
    const DeviceModel dev = test_device();
    CalibrationOptions opt;
    opt.nominal_law = detuned_law(dev.law);
    for (const AxisAngle tgt : {AxisAngle{0.0, kPi / 2}, AxisAngle{kPi, kPi}, AxisAngle{-kPi / 2, 3 * kPi / 2}}) {
        const CalibrationResult r = run_calibration(tgt, dev, opt);
        const auto [dphi, dtheta] = calibration_error(r);
        EXPECT_LT(std::abs(dphi), 1e-3);
        EXPECT_LT(std::abs(dtheta), 1e-3);
        EXPECT_EQ(r.stages.size(), kDefaultSchedule.size());
        const auto j = calibration_json(r);
        EXPECT_TRUE(j.contains("final"));
        EXPECT_EQ(j["stages"].size(), kDefaultSchedule.size());
    }
}

TEST(Calibration, LostPeakDiverges) {
    const DeviceModel dev = test_device();
    CalibrationOptions opt;
    ExchangeLaw far = dev.law;
    for (auto &p : far.pairs) p.c += 1.0;
    opt.nominal_law = far;
    opt.half_width_v = 2e-3;
    EXPECT_THROW(run_calibration({0.0, kPi}, dev, opt), CalibrationDiverged);
}

TEST(Calibration, RejectsBadSchedule) {
    CalibrationOptions opt;
    opt.schedule = {1, 4, 2};
    EXPECT_THROW(run_calibration({0.0, kPi}, test_device(), opt), InvalidArgument);
    EXPECT_THROW(run_calibration({0.0, 0.3}, test_device()), InvalidArgument);
}

}  // namespace
}  // namespace aeon
