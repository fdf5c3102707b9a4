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

// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "aeon/benchmarking.hpp"
#include "aeon/calibration.hpp"
#include "aeon/device_config.hpp"
#include "cli_runner.hpp"
#include "oracles.hpp"

using namespace aeon;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

const std::vector<AxisAngle> kTargets{{0.0, kPi / 2},       {0.0, kPi},       {0.0, 3 * kPi / 2},
                                      {kPi, kPi / 2},       {kPi, kPi},       {kPi, 3 * kPi / 2},
                                      {-kPi / 2, kPi / 2}, {-kPi / 2, kPi}, {-kPi / 2, 3 * kPi / 2}};

DeviceModel config_device() { return load_device(clitest::config("device.json")); }

ExchangeLaw detuned(const ExchangeLaw &truth) {
    ExchangeLaw law = truth;
    for (auto &p : law.pairs) {
        p.c += 0.03;
        p.b_per_v *= 1.005;
    }
    return law;
}

Outcome spectrum() {
    double worst_gap = 0.0;
    for (double f : {1e6, 37e6, 100e6, 250e6}) {
        const Spectrum s = eigenspectrum(build_hamiltonian({f, f, f}));
        worst_gap = std::max(worst_gap, std::abs((s.values(4) - s.values(3)) / (1.5 * kTwoPi * f) - 1.0));
    }
    bool topology = true;
    double min_sep = 1e300;
    for (int k = 1; k <= 200; ++k) {
        const double j12 = 1e6 * k;
        const ExchangeVector j{j12, 100e6, 0.0};
        const Spectrum s = eigenspectrum(build_hamiltonian(j));
        const double quad = kTwoPi * (j.j12 + j.j23 + j.j13) / 4.0;
        for (int e = 4; e < 8; ++e) topology = topology && std::abs(s.values(e) - quad) < 1e-6 * quad;
        min_sep = std::min(min_sep, s.values(4) - s.values(3));
    }
    topology = topology && min_sep > 0.0;
    return {worst_gap < 1e-10 && topology,
            fmt("gap rel err %.1e, quadruplet 4-fold and above doublets, min separation %.3e rad/s", worst_gap, min_sep)};
}

Outcome block_equivalence() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 2e8), t(1e-9, 5e-8);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const ExchangeVector j{u(rng), u(rng), u(rng)};
        const double tau = t(rng);
        const Matrix8c full = propagator(build_hamiltonian(j), tau);
        const oracle::M2 two = oracle::expm_taylor<oracle::M2>(oracle::cplx(0, -tau) * qubit_block(j));
        for (int g = 0; g < 2; ++g) worst = std::max(worst, oracle::phase_infidelity(qubit_subspace_block(full, g), two));
    }
    return {worst <= 1e-9, fmt("max infidelity %.2e over 1000 vectors, both gauges", worst)};
}

Outcome axis_map() {
    const double tau = 10e-9;
    const auto axis = [&](ExchangeVector j) { return exchange_to_rotation(j, tau).axis(); };
    const double em = (axis({40e6, 0, 0}) - axes::m()).norm();
    const double en = (axis({0, 40e6, 0}) - axes::n()).norm();
    const double ez = (axis({0, 0, 40e6}) - axes::z()).norm();
    const AxisAngle aa = exchange_to_rotation({50e6, 50e6, 0}, tau);
    const double ep = std::max(std::abs(aa.phi + kPi / 2), std::abs(aa.theta - kPi));
    const double worst = std::max({em, en, ez, ep});
    return {worst <= 1e-12, fmt("axis errors m %.1e n %.1e z %.1e", em, en, ez) + fmt(", (50,50,0) MHz: %.1e", ep)};
}

Outcome analytic_vs_oracle() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double worst = 0.0;
    const int points = 1200;
    for (int k = 0; k < points; ++k) {
        const double phi = u(rng), th = u(rng) + kPi, eta = u(rng), chi = u(rng) + kPi;
        const int q = 1 + k % 3, n = 1 + k % 24;
        const double ref = oracle::twirl_enumerated(oracle::germ(phi, th, eta, chi, q, n));
        worst = std::max(worst, std::abs(analytic_fidelity(phi, th, eta, chi, n, q) - ref));
    }
    double perfect = 0.0;
    for (const AxisAngle &t : kTargets) {
        const auto [q, s] = germ_multiplicity(t.theta);
        const AxisAngle pc = default_precal(t);
        for (int n = 1; n <= 24; ++n) {
            perfect = std::max(perfect, std::abs(1.0 - analytic_fidelity(t.phi, t.theta, pc.phi, pc.theta, n, q)));
            perfect = std::max(perfect, std::abs(1.0 - oracle::twirl_enumerated(oracle::germ(t.phi, t.theta, pc.phi, pc.theta, q, n))));
        }
    }
    return {worst <= 1e-9 && perfect <= 1e-9,
            fmt("max |analytic - oracle| %.1e over %.0f points; perfect-calibration max |1 - F| %.1e", worst, points, perfect)};
}

Outcome interference() {
    double worst_spacing = 0.0, worst_width = 0.0;
    for (const AxisAngle &t : kTargets) {
        const auto [q, s] = germ_multiplicity(t.theta);
        const AxisAngle pc = default_precal(t);
        double prev_width = 0.0;
        for (int n : {4, 8, 16}) {
            const int m = 200000;
            std::vector<double> ph(m), f(m);
            for (int i = 0; i < m; ++i) {
                ph[i] = t.phi - kPi / 4 + (kPi / 2) * i / m;
                f[i] = analytic_fidelity(ph[i], t.theta, pc.phi, pc.theta, n, q);
            }
            std::vector<int> peaks;
            for (int i = 1; i + 1 < m; ++i)
                if (f[i] > f[i - 1] && f[i] >= f[i + 1] && f[i] > 0.9) peaks.push_back(i);
            std::size_t c = 0;
            for (std::size_t k = 1; k < peaks.size(); ++k)
                if (std::abs(ph[peaks[k]] - t.phi) < std::abs(ph[peaks[c]] - t.phi)) c = k;
            if (c == 0 || c + 1 >= peaks.size()) return {false, "central peak neighbours not found"};
            for (std::size_t k : {c - 1, c})
                worst_spacing = std::max(worst_spacing, std::abs((ph[peaks[k + 1]] - ph[peaks[k]]) / (kPi / (2 * n)) - 1.0));
            // Full width at the level halfway between the peak and the 1/3 floor.
            const int ic = peaks[c];
            const double level = 0.5 * (f[ic] + 1.0 / 3.0);
            int a = ic, b = ic;
            while (a > 0 && f[a] > level) --a;
            while (b + 1 < m && f[b] > level) ++b;
            const double width = ph[b] - ph[a];
            if (prev_width > 0.0) worst_width = std::max(worst_width, std::abs(prev_width / width / 2.0 - 1.0));
            prev_width = width;
        }
    }
    return {worst_spacing <= 0.02 && worst_width <= 0.05,
            fmt("spacing max rel dev %.1e from pi/(2N); width halving max rel dev %.1e (N = 4, 8, 16; nine targets)", worst_spacing, worst_width)};
}

Outcome closed_loop() {
    const DeviceModel dev = config_device();
    CalibrationOptions opt;
    opt.nominal_law = detuned(dev.law);
    double worst = 0.0;
    std::string failed;
    for (const AxisAngle &t : kTargets) {
        try {
            const auto [dphi, dtheta] = calibration_error(run_calibration(t, dev, opt));
            worst = std::max({worst, std::abs(dphi), std::abs(dtheta)});
        } catch (const std::exception &e) {
            failed = e.what();
            worst = 1e300;
        }
    }
    return {worst <= 1e-3, failed.empty() ? fmt("max |dphi|,|dtheta| %.1e rad over nine targets", worst) : failed};
}

Outcome cliffords() {
    const CliffordGroup two = two_j_clifford_group();
    const CliffordGroup one = compile_clifford_group_1j({axes::z(), axes::n()});
    std::vector<Pulse> as_generators;
    for (const auto &e : one)
        if (e.index != 0) as_generators.push_back({e.rotation.axis(), e.rotation.angle()});
    bool closed = true;
    for (const auto &a : one)
        for (const auto &b : one) closed = closed && find_element(one, compose(a.rotation, b.rotation)).has_value();
    const double a2 = avg_pulse_count(two).value(), a1 = avg_pulse_count(one).value();
    const bool ok = two.size() == 24 && one.size() == 24 && closed && std::abs(a2 - 1.9) <= 0.15 && std::abs(a1 - 2.7) <= 0.15;
    return {ok, fmt("2-J BFS %.0f elements, 1-J compiled %.0f elements (closed under products)", two.size(), one.size()) +
                    fmt("; avg pulses 2-J %.4f, 1-J %.4f", a2, a1)};
}

Outcome rb_self_consistency() {
    const DeviceModel dev;
    std::string detail;
    bool ok = true;
    for (double eps : {3e-4, 1e-3}) {
        RbConfig cfg;
        cfg.injected.depolarizing = eps;
        const RbResult r = benchmark(cfg, dev);
        const double ratio = r.fit.err_per_clifford / (r.data.avg_pulses * eps);
        ok = ok && std::abs(ratio - 1.0) <= 0.10;
        detail += fmt("depol %.0e ratio %.3f; ", eps, ratio);
    }
    {
        RbConfig cfg;
        cfg.injected.leakage = 1e-3;
        const RbResult r = benchmark(cfg, dev);
        const double ratio = r.fit.leak_per_clifford / (r.data.avg_pulses * 1e-3);
        ok = ok && std::abs(ratio - 1.0) <= 0.15;
        detail += fmt("leakage ratio %.3f; ", ratio);
    }
    {
        RbConfig cfg;
        const InterleavedGate g{"x:pi/2", Rotation::about(axes::x(), kPi / 2), {{axes::x(), kPi / 2}}, 1e-3};
        const InterleavedResult r = interleaved_rb(g, cfg, dev);
        ok = ok && std::abs(r.gate_error - 1e-3) <= 2e-4;
        detail += fmt("IRB excess %.3e (injected 1e-3)", r.gate_error);
    }
    return {ok, detail};
}

Outcome sensitivity() {
    const DeviceModel dev = config_device();
    const double tau = dev.pulse_duration_s;
    bool ok = true;
    std::string detail;
    for (const AxisAngle t : {AxisAngle{0.0, kPi}, AxisAngle{-kPi / 2, kPi}}) {
        const CalibrationTarget ct = make_calibration_target(t, tau);
        const ExchangeVoltages truth_v = voltages_for_exchange(ct.exchange(tau), dev.law);
        for (double eps : {0.01, -0.02}) {
            CalibrationOptions o;
            o.sweep.eta_error = eps;
            const CalibrationResult r = run_calibration(t, dev, o);
            const double shift = wrap_pi(exchange_to_rotation(exchange_from_voltages(truth_v, r.fit.law), tau).phi - t.phi);
            ok = ok && std::abs(shift + eps) <= 0.05 * std::abs(eps);
            detail += fmt("eta %+.2f -> phi shift %+.5f; ", eps, shift);
        }
        CalibrationOptions o0;
        o0.keep_maps = true;
        const CalibrationResult r0 = run_calibration(t, dev, o0);
        const FidelityMap &m0 = r0.maps.back();
        SweepOptions so;
        so.chi_error = 0.05;
        const FidelityMap m1 = sweep_fidelity(m0.grid, make_germ_config(t, ct.precal, m0.n), dev, so);
        const PeakLocation p0 = find_peak(m0), p1 = find_peak(m1, std::pair{p0.va, p0.vb});
        const double cell = m0.grid.va[1] - m0.grid.va[0];
        const double disp = std::hypot(p1.va - p0.va, p1.vb - p0.vb) / cell;
        double distortion = 0.0;
        for (std::size_t k = 0; k < m0.fidelity.size(); ++k) distortion = std::max(distortion, std::abs(m1.fidelity[k] - m0.fidelity[k]));
        ok = ok && disp <= 1.0 && distortion > 1e-3;
        detail += fmt("chi 0.05 -> peak moves %.2f cells, max map change %.3f; ", disp, distortion);
    }
    return {ok, detail};
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "aeon_acceptance_cli";
    const std::string base = "--config " + clitest::config("device.json") + " --seed 11 --emit-plot-data ";
    const std::string noisy = "--config " + clitest::config("device_noisy.json") + " --seed 11 --emit-plot-data ";
    const std::vector<std::pair<std::string, std::string>> cmds{
        {"spectrum", base + "spectrum"},
        {"fingerpinch", base + "fingerpinch --hadamard"},
        {"rabi", noisy + "rabi --noise-samples 50"},
        {"calibrate", base + "calibrate --axis -x --angle 3pi/2"},
        {"calibrate-shots", noisy + "calibrate --axis x --angle pi --schedule 1,2,4 --points 31 --shots 20"},
        {"rb", noisy + "rb --repetitions 20"},
        {"irb", base + "irb --inject-depol 3e-4 --gate-excess 1e-3"},
        {"cliffords", base + "cliffords"},
        {"dump-hamiltonian", base + "dump-hamiltonian --j12 3e7 --j13 6e7 --tau 1e-8"},
    };
    bool ok = true;
    std::string detail;
    for (const auto &[name, args] : cmds) {
        std::string d;
        const bool same = clitest::deterministic(args, root / name, &d);
        ok = ok && same;
        if (!same) detail += name + " differs (" + d + "); ";
    }
    return {ok, ok ? std::to_string(cmds.size()) + " commands byte-identical on rerun" : detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"spectrum check", spectrum},
        {"block equivalence", block_equivalence},
        {"axis map", axis_map},
        {"analytic vs oracle fidelity", analytic_vs_oracle},
        {"interference structure", interference},
        {"closed-loop calibration", closed_loop},
        {"Clifford compilation", cliffords},
        {"RB self-consistency", rb_self_consistency},
        {"error-sensitivity signatures", sensitivity},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %zu (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
