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

// aeon: command-line driver for the simulator.
//
// Exit codes: 0 ok, 2 usage, 3 numeric or fit failure, 4 configuration error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aeon/benchmarking.hpp"
#include "aeon/calibration.hpp"
#include "aeon/clifford.hpp"
#include "aeon/device_config.hpp"
#include "aeon/device_model.hpp"
#include "aeon/errors.hpp"
#include "aeon/executor.hpp"
#include "aeon/hash.hpp"
#include "aeon/spin_hilbert.hpp"
#include "aeon/su2.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace aeon;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Global {
    std::string config = "configs/device.json";
    std::uint64_t seed = 0;
    std::string out = "out";
    unsigned threads = 0;
    bool plot = false;
};

struct Context {
    const Global &g;
    DeviceModel device;
    Executor exec;

    std::string hash(const json &params) const {
        return hex64(fnv1a64(device_to_json(device).dump() + params.dump() + std::to_string(g.seed)));
    }

    void write(const std::string &name, const std::string &text) const {
        fs::create_directories(g.out);
        std::ofstream f(fs::path(g.out) / name, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + (fs::path(g.out) / name).string());
        f << text;
    }

    void write_json(const std::string &name, const json &j) const { write(name, j.dump(2) + "\n"); }
};

// Accepts "pi", "pi/2", "3pi/2", "-pi/2", "3*pi/4" or a plain number (radians).
double parse_angle(const std::string &s) {
    static const std::regex re(R"(^\s*([+-]?\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, re)) {
        double k = 1.0;
        const std::string c = m[1].str();
        if (c == "-") k = -1.0;
        else if (!c.empty() && c != "+") k = std::stod(c);
        const double d = m[2].matched ? std::stod(m[2].str()) : 1.0;
        return k * kPi / d;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception &) {
    }
    throw UsageError("cannot parse angle '" + s + "'");
}

// Named xz-plane axes or a numeric phi.
double parse_axis(const std::string &s) {
    if (s == "x" || s == "+x") return 0.0;
    if (s == "-x") return kPi;
    if (s == "z" || s == "+z") return kPi / 2;
    if (s == "-z") return -kPi / 2;
    if (s == "n") return std::atan2(axes::n().z(), axes::n().x());
    if (s == "m") return std::atan2(axes::m().z(), axes::m().x());
    return wrap_pi(parse_angle(s));
}

Pair parse_pair(const std::string &s) {
    for (Pair p : kPairs)
        if (s == kPairNames[index(p)]) return p;
    throw UsageError("pair must be 12, 23 or 13, got '" + s + "'");
}

std::vector<double> linspace(double a, double b, int n) {
    if (n < 1) throw UsageError("need at least one point");
    if (b < a) throw UsageError("range end is below range start");
    if (a == b) return {a};
    if (n == 1) return {a};
    std::vector<double> v;
    for (int k = 0; k < n; ++k) v.push_back(a + (b - a) * k / (n - 1));
    return v;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Long-format plot rows: panel, series, x, y, z.
struct PlotData {
    std::ostringstream rows;
    PlotData() { rows << "panel,series,x,y,z\n"; }
    void add(const std::string &panel, const std::string &series, double x, double y) {
        rows << panel << ',' << series << ',' << fmt(x) << ',' << fmt(y) << ",\n";
    }
    void add(const std::string &panel, const std::string &series, double x, double y, double z) {
        rows << panel << ',' << series << ',' << fmt(x) << ',' << fmt(y) << ',' << fmt(z) << '\n';
    }
};

void write_matrix_csv(std::ostream &os, const Matrix8c &m) {
    os << "row,col,re,im\n";
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) os << r << ',' << c << ',' << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag()) << '\n';
}

// Physical 8x8 propagator of a 1-J Hadamard (pi about (x + z)/sqrt2).
Matrix8c hadamard_propagator(const DeviceModel &dev) {
    const Rotation h = Rotation::about(Vec3(1.0, 0.0, 1.0).normalized(), kPi);
    Matrix8c u = Matrix8c::Identity();
    for (const auto &p : decompose_rotation_1j(h, {axes::z(), axes::n()}))
        u = pulse_propagator(realize_rotation(p.axis, p.angle, dev), dev) * u;
    return u;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    std::string sweep = "12";
    std::string fixed = "23";
    double fixed_hz = 100e6;
    double from_hz = 0.0;
    double to_hz = 200e6;
    int points = 201;
    std::optional<double> field_t;
};

int cmd_spectrum(const Context &ctx, const SpectrumArgs &a) {
    const Pair sweep = parse_pair(a.sweep), fixed = parse_pair(a.fixed);
    if (sweep == fixed) throw UsageError("--sweep and --fixed must name different pairs");
    if (a.fixed_hz < 0.0 || a.from_hz < 0.0) throw UsageError("exchange values must be >= 0");
    const auto js = linspace(a.from_hz, a.to_hz, a.points);
    FieldConfig f = ctx.device.fields;
    if (a.field_t) f.global_b = *a.field_t;
    std::ostringstream csv;
    csv << "j" << kPairNames[index(sweep)] << "_hz";
    for (int k = 0; k < 8; ++k) csv << ",E" << k << "_rad_per_s";
    csv << '\n';
    PlotData plot;
    for (double j : js) {
        ExchangeVector ev;
        component(ev, sweep) = j;
        component(ev, fixed) = a.fixed_hz;
        const Spectrum s = eigenspectrum(build_hamiltonian(ev, f));
        csv << fmt(j);
        for (int k = 0; k < 8; ++k) {
            csv << ',' << fmt(s.values(k));
            plot.add("spectrum", "E" + std::to_string(k), j, s.values(k));
        }
        csv << '\n';
    }
    ctx.write("spectrum.csv", csv.str());
    if (ctx.g.plot) ctx.write("spectrum_plot.csv", plot.rows.str());
    return 0;
}

// ------------------------------------------------------------- fingerpinch

struct FingerpinchArgs {
    std::string pair_a = "12";
    std::string pair_b = "23";
    double a_from = 0.04, a_to = 0.10;
    double b_from = 0.04, b_to = 0.10;
    int points_a = 61, points_b = 61;
    std::optional<double> duration_s;
    bool hadamard = false;
};

int cmd_fingerpinch(const Context &ctx, const FingerpinchArgs &a) {
    const Pair pa = parse_pair(a.pair_a), pb = parse_pair(a.pair_b);
    if (pa == pb) throw UsageError("--pair-a and --pair-b must differ");
    const auto va = linspace(a.a_from, a.a_to, a.points_a);
    const auto vb = linspace(a.b_from, a.b_to, a.points_b);
    const double tau = a.duration_s.value_or(ctx.device.pulse_duration_s);
    if (!(tau >= 0.0)) throw UsageError("--duration must be >= 0");
    const Matrix8c h = a.hadamard ? hadamard_propagator(ctx.device) : Matrix8c::Identity();
    std::vector<double> p0(va.size() * vb.size());
    ctx.exec.parallel_for(p0.size(), [&](std::size_t cell) {
        ExchangeVoltages v;
        v[index(pa)] = va[cell / vb.size()];
        v[index(pb)] = vb[cell % vb.size()];
        const Matrix8c u = h * pulse_propagator({v, tau, std::nullopt}, ctx.device) * h;
        p0[cell] = std::clamp(measure_p0(apply_unitary(initialize_singlet(), u)), 0.0, 1.0);
    });
    std::ostringstream csv;
    csv << "v_x" << kPairNames[index(pa)] << "_V,v_x" << kPairNames[index(pb)] << "_V,p0\n";
    PlotData plot;
    for (std::size_t c = 0; c < p0.size(); ++c) {
        csv << fmt(va[c / vb.size()]) << ',' << fmt(vb[c % vb.size()]) << ',' << fmt(p0[c]) << '\n';
        plot.add("fingerpinch", "p0", va[c / vb.size()], vb[c % vb.size()], p0[c]);
    }
    ctx.write("fingerpinch.csv", csv.str());
    if (ctx.g.plot) ctx.write("fingerpinch_plot.csv", plot.rows.str());
    return 0;
}

// -------------------------------------------------------------------- rabi

struct RabiArgs {
    std::string axis = "-z";
    double omega_hz = 80e6;
    double t_max_s = 500e-9;
    int points = 401;
    int noise_samples = 200;
    std::string hadamard = "auto";
};

int cmd_rabi(const Context &ctx, const RabiArgs &a) {
    const double phi = parse_axis(a.axis);
    if (!(a.omega_hz > 0.0)) throw UsageError("--omega-hz must be > 0");
    if (a.points < 8) throw UsageError("--points must be >= 8");
    const double tau = ctx.device.pulse_duration_s;
    const AxisAngle per_pulse{phi, kTwoPi * a.omega_hz * tau};
    std::optional<ExchangeVector> j;
    for (IdlePair idle : {IdlePair::k13, IdlePair::k23, IdlePair::k12}) {
        try {
            j = exchange_for_rotation(per_pulse, tau, idle);
            break;
        } catch (const InvalidArgument &) {
        }
    }
    if (!j) throw UsageError("axis is not reachable with two exchange couplings");
    const ExchangeVoltages v = voltages_for_exchange(*j, ctx.device.law, ctx.device.cross_or_null());
    const ExchangeVector realized = exchange_from_voltages(v, ctx.device.law, ctx.device.cross_or_null());
    const double achieved_hz = rotation_rate(realized) / kTwoPi;

    bool use_h = a.hadamard == "on";
    if (a.hadamard == "auto") use_h = std::abs(std::cos(phi)) < 1e-9;
    else if (a.hadamard != "off" && a.hadamard != "on") throw UsageError("--hadamard must be auto, on or off");
    const Matrix8c h = use_h ? hadamard_propagator(ctx.device) : Matrix8c::Identity();

    const auto ts = linspace(0.0, a.t_max_s, a.points);
    const bool noisy = !ctx.device.noise.silent();
    const int draws = noisy ? std::max(1, a.noise_samples) : 1;
    std::vector<std::vector<double>> per_draw(draws, std::vector<double>(ts.size()));
    ctx.exec.parallel_for(static_cast<std::size_t>(draws), [&](std::size_t d) {
        Rng rng = stream(ctx.g.seed ^ ctx.device.noise.seed, {0x72616269ULL, d});
        const NoiseDraw draw = noisy ? sample_noise(ctx.device.noise, rng) : NoiseDraw{};
        const Spectrum s = eigenspectrum(build_hamiltonian(noisy_exchange(v, ctx.device, draw),
                                                           noisy_fields(ctx.device, draw)));
        for (std::size_t k = 0; k < ts.size(); ++k) {
            Eigen::Matrix<cplx, 8, 1> ph;
            for (int e = 0; e < 8; ++e) ph(e) = std::polar(1.0, -s.values(e) * ts[k]);
            const Matrix8c u = h * (s.vectors * ph.asDiagonal() * s.vectors.adjoint()) * h;
            per_draw[d][k] = std::clamp(measure_p0(apply_unitary(initialize_singlet(), u)), 0.0, 1.0);
        }
    });
    std::vector<double> p0(ts.size(), 0.0);
    for (const auto &row : per_draw)
        for (std::size_t k = 0; k < ts.size(); ++k) p0[k] += row[k] / draws;

    std::ostringstream csv;
    csv << "t_s,p0\n";
    PlotData plot;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        csv << fmt(ts[k]) << ',' << fmt(p0[k]) << '\n';
        plot.add("rabi", "p0", ts[k], p0[k]);
    }
    json out;
    out["axis_phi"] = phi;
    out["omega_target_hz"] = a.omega_hz;
    out["omega_realized_hz"] = achieved_hz;
    out["hadamard"] = use_h;
    out["noise_samples"] = draws;
    try {
        const OscillationFit f = fit_oscillation_decay(ts, p0);
        out["fit"]["omega_hz"] = f.omega / kTwoPi;
        if (f.unbounded()) {
            out["fit"]["decay_time_s"] = nullptr;
            out["fit"]["n_osc"] = "unbounded";
        } else {
            out["fit"]["decay_time_s"] = f.decay_time;
            out["fit"]["n_osc"] = f.n_osc;
        }
        out["fit"]["rms"] = f.rms;
    } catch (const FitFailure &e) {
        out["fit"] = {{"error", e.what()}};
    }
    ctx.write("rabi.csv", csv.str());
    ctx.write_json("rabi.json", out);
    if (ctx.g.plot) ctx.write("rabi_plot.csv", plot.rows.str());
    return 0;
}

// --------------------------------------------------------------- calibrate

struct CalibrateArgs {
    std::string axis = "-z";
    std::string angle = "pi";
    std::vector<int> schedule = kDefaultSchedule;
    int points = 51;
    int shots = 0;
    double half_width_v = 20e-3;
    double eta_error = 0.0;
    double chi_error = 0.0;
};

int cmd_calibrate(const Context &ctx, const CalibrateArgs &a) {
    const AxisAngle target{parse_axis(a.axis), parse_angle(a.angle)};
    try {
        germ_multiplicity(target.theta);
    } catch (const InvalidArgument &e) {
        throw UsageError(std::string("invalid target angle: ") + e.what());
    }
    CalibrationOptions opt;
    opt.schedule = a.schedule;
    opt.points = a.points;
    opt.shots = a.shots;
    opt.half_width_v = a.half_width_v;
    opt.sweep.seed = ctx.g.seed;
    opt.sweep.eta_error = a.eta_error;
    opt.sweep.chi_error = a.chi_error;
    opt.fit.seed = ctx.g.seed;
    opt.keep_maps = true;
    CalibrationResult r;
    try {
        r = run_calibration(target, ctx.device, opt, ctx.exec);
    } catch (const InvalidArgument &e) {
        throw UsageError(e.what());
    }
    json params = {{"axis", a.axis}, {"angle", a.angle}, {"schedule", a.schedule}, {"points", a.points},
                   {"shots", a.shots}, {"half_width_v", a.half_width_v}};
    json j;
    j["config_hash"] = ctx.hash(params);
    const json body = calibration_json(r);
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    ctx.write_json("calibration.json", j);
    PlotData plot;
    for (std::size_t s = 0; s < r.maps.size(); ++s) {
        std::ostringstream csv;
        write_map_csv(csv, r.maps[s]);
        ctx.write("calibration_map_N" + std::to_string(r.maps[s].n) + ".csv", csv.str());
        const auto &m = r.maps[s];
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k)
                plot.add("N" + std::to_string(m.n), "fidelity", m.grid.va[i], m.grid.vb[k], m.at(i, k));
    }
    if (ctx.g.plot) ctx.write("calibration_plot.csv", plot.rows.str());
    return 0;
}

// --------------------------------------------------------------- rb / irb

struct RbArgs {
    std::string set = "2j";
    std::vector<int> depths{2, 4, 8, 16, 32, 64, 128};
    int sequences = 30;
    int repetitions = 250;
    int shots = 10;
    double inject_depol = 0.0;
    double inject_leak = 0.0;
    double gate_excess = 0.0;  // irb only
};

RbConfig rb_config(const Context &ctx, const RbArgs &a) {
    RbConfig c;
    if (a.set == "1j") c.set = CliffordSet::kOneJ;
    else if (a.set == "2j") c.set = CliffordSet::kTwoJ;
    else throw UsageError("--set must be 1j or 2j");
    c.depths = a.depths;
    c.sequences = a.sequences;
    c.repetitions = a.repetitions;
    c.shots = a.shots;
    c.seed = ctx.g.seed;
    c.injected = {a.inject_depol, a.inject_leak};
    try {
        c.validate();
    } catch (const InvalidArgument &e) {
        throw UsageError(e.what());
    }
    return c;
}

json rb_params(const RbArgs &a) {
    return {{"set", a.set}, {"depths", a.depths}, {"sequences", a.sequences}, {"repetitions", a.repetitions},
            {"shots", a.shots}, {"inject_depol", a.inject_depol}, {"inject_leak", a.inject_leak},
            {"gate_excess", a.gate_excess}};
}

void add_rb_plot(PlotData &plot, const std::string &panel, const RbResult &r) {
    for (const auto &d : r.data.per_depth) {
        plot.add(panel, "p0_id", d.n, d.p0_id);
        plot.add(panel, "p0_flip", d.n, d.p0_flip);
    }
}

int cmd_rb(const Context &ctx, const RbArgs &a) {
    const RbConfig c = rb_config(ctx, a);
    const RbResult r = benchmark(c, ctx.device, ctx.exec);
    json j = rb_json(r, ctx.hash(rb_params(a)));
    j["set"] = clifford_set_name(c.set);
    ctx.write_json("rb.json", j);
    std::ostringstream csv;
    write_rb_csv(csv, r);
    ctx.write("rb_decay.csv", csv.str());
    if (ctx.g.plot) {
        PlotData plot;
        add_rb_plot(plot, "rb", r);
        ctx.write("rb_plot.csv", plot.rows.str());
    }
    return 0;
}

int cmd_irb(const Context &ctx, const RbArgs &a) {
    const RbConfig c = rb_config(ctx, a);
    struct Row {
        const char *axis;
        Vec3 dir;
        const char *angle;
        double theta;
    };
    const std::vector<Row> rows{
        {"x", axes::x(), "pi/2", kPi / 2},    {"x", axes::x(), "pi", kPi},    {"x", axes::x(), "3pi/2", 3 * kPi / 2},
        {"-x", -axes::x(), "pi/2", kPi / 2},  {"-x", -axes::x(), "pi", kPi},  {"-x", -axes::x(), "3pi/2", 3 * kPi / 2},
        {"-z", -axes::z(), "pi/2", kPi / 2},  {"-z", -axes::z(), "pi", kPi},  {"-z", -axes::z(), "3pi/2", 3 * kPi / 2},
    };
    std::vector<TableRow> table;
    json arr = json::array();
    PlotData plot;
    for (const auto &row : rows) {
        InterleavedGate g{std::string(row.axis) + ":" + row.angle, Rotation::about(row.dir, row.theta),
                          {Pulse{row.dir, row.theta}}, a.gate_excess};
        const InterleavedResult r = interleaved_rb(g, c, ctx.device, ctx.exec);
        table.push_back(table_row(row.axis, row.angle, r));
        arr.push_back({{"axis", row.axis},
                       {"angle", row.angle},
                       {"total_error", r.gate_error},
                       {"leakage_error", r.leakage_error},
                       {"reference_err_per_clifford", r.reference.fit.err_per_clifford},
                       {"interleaved_err_per_clifford", r.interleaved.fit.err_per_clifford}});
        add_rb_plot(plot, g.label, r.interleaved);
    }
    json j;
    j["config_hash"] = ctx.hash(rb_params(a));
    j["set"] = clifford_set_name(c.set);
    j["gates"] = arr;
    ctx.write_json("irb.json", j);
    std::ostringstream csv;
    write_table_csv(csv, table);
    ctx.write("irb_table.csv", csv.str());
    if (ctx.g.plot) ctx.write("irb_plot.csv", plot.rows.str());
    return 0;
}

// ------------------------------------------------------- cliffords / dump

int cmd_cliffords(const Context &ctx) {
    json j;
    const auto one = compile_clifford_group_1j({axes::z(), axes::n()});
    const auto two = two_j_clifford_group();
    j["one_j"] = {{"axes", {"z", "n"}}, {"avg_pulses", avg_pulse_count(one).value()},
                  {"elements", clifford_table_json(one)}};
    j["two_j"] = {{"generators", "pi/2, pi, 3pi/2 about x, -x, -z (index = 3 * axis + angle)"},
                  {"avg_pulses", avg_pulse_count(two).value()},
                  {"elements", clifford_table_json(two)}};
    ctx.write_json("cliffords.json", j);
    return 0;
}

struct DumpArgs {
    double j12 = 0.0, j23 = 0.0, j13 = 0.0;
    std::optional<double> tau_s;
};

int cmd_dump(const Context &ctx, const DumpArgs &a) {
    const ExchangeVector j{a.j12, a.j23, a.j13};
    try {
        j.validate();
    } catch (const InvalidArgument &e) {
        throw UsageError(e.what());
    }
    const Hamiltonian8 h = build_hamiltonian(j, ctx.device.fields);
    std::ostringstream os;
    write_matrix_csv(os, h.m);
    ctx.write("hamiltonian.csv", os.str());
    if (a.tau_s) {
        std::ostringstream u;
        write_matrix_csv(u, propagator(h, *a.tau_s));
        ctx.write("propagator.csv", u.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"aeon: exchange-only spin qubit simulator, calibration and benchmarking"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--config", g.config, "Device configuration JSON")->envname("AEON_CONFIG");
    app.add_option("--seed", g.seed, "Random seed")->envname("AEON_SEED");
    app.add_option("--out", g.out, "Output directory")->envname("AEON_OUT");
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->envname("AEON_THREADS");
    app.add_flag("--emit-plot-data", g.plot, "Also write long-format plot CSV")->envname("AEON_EMIT_PLOT_DATA");

    SpectrumArgs sa;
    auto *sp = app.add_subcommand("spectrum", "Eigenvalues of the three-spin Hamiltonian versus one exchange");
    sp->add_option("--sweep", sa.sweep, "Swept pair (12, 23, 13)");
    sp->add_option("--fixed", sa.fixed, "Pair held fixed");
    sp->add_option("--fixed-hz", sa.fixed_hz, "Fixed exchange, Hz");
    sp->add_option("--from", sa.from_hz, "Sweep start, Hz");
    sp->add_option("--to", sa.to_hz, "Sweep end, Hz");
    sp->add_option("--points", sa.points, "Sweep points");
    sp->add_option("--field-t", sa.field_t, "Global field override, T");

    FingerpinchArgs fa;
    auto *fp = app.add_subcommand("fingerpinch", "P0 after one exchange pulse over two gate voltages");
    fp->add_option("--pair-a", fa.pair_a);
    fp->add_option("--pair-b", fa.pair_b);
    fp->add_option("--a-from", fa.a_from, "V");
    fp->add_option("--a-to", fa.a_to, "V");
    fp->add_option("--b-from", fa.b_from, "V");
    fp->add_option("--b-to", fa.b_to, "V");
    fp->add_option("--points-a", fa.points_a);
    fp->add_option("--points-b", fa.points_b);
    fp->add_option("--duration", fa.duration_s, "Pulse length, s");
    fp->add_flag("--hadamard", fa.hadamard, "1-J Hadamard before and after the pulse");

    RabiArgs ra;
    auto *rp = app.add_subcommand("rabi", "Exchange oscillations and Gaussian-decay fit");
    rp->add_option("--axis", ra.axis, "x, -x, z, -z, n, m or phi in radians");
    rp->add_option("--omega-hz", ra.omega_hz, "Oscillation frequency, Hz");
    rp->add_option("--t-max", ra.t_max_s, "Longest evolution, s");
    rp->add_option("--points", ra.points);
    rp->add_option("--noise-samples", ra.noise_samples);
    rp->add_option("--hadamard", ra.hadamard, "auto, on or off");

    CalibrateArgs ca;
    auto *cp = app.add_subcommand("calibrate", "Germ-based 2-J gate calibration");
    cp->add_option("--axis", ca.axis, "x, -x, -z or phi in radians");
    cp->add_option("--angle", ca.angle, "Target angle, e.g. pi/2, pi, 3pi/2");
    cp->add_option("--schedule", ca.schedule, "Germ powers")->delimiter(',');
    cp->add_option("--points", ca.points, "Grid points per axis");
    cp->add_option("--shots", ca.shots, "Shots per twirl term (0 = exact)");
    cp->add_option("--half-width", ca.half_width_v, "Window half width at N = 1, V");
    cp->add_option("--eta-error", ca.eta_error, "Simulated precal axis error, rad");
    cp->add_option("--chi-error", ca.chi_error, "Simulated precal angle error, rad");

    RbArgs rba;
    auto add_rb_opts = [&](CLI::App *c) {
        c->add_option("--set", rba.set, "1j or 2j");
        c->add_option("--depths", rba.depths)->delimiter(',');
        c->add_option("--sequences", rba.sequences);
        c->add_option("--repetitions", rba.repetitions);
        c->add_option("--shots", rba.shots);
        c->add_option("--inject-depol", rba.inject_depol, "Average infidelity per pulse");
        c->add_option("--inject-leak", rba.inject_leak, "Leakage probability per pulse");
    };
    auto *rbp = app.add_subcommand("rb", "Blind randomized benchmarking");
    add_rb_opts(rbp);
    auto *irbp = app.add_subcommand("irb", "Interleaved blind RB of the nine 2-J gates");
    add_rb_opts(irbp);
    irbp->add_option("--gate-excess", rba.gate_excess, "Injected infidelity per interleaved gate");

    auto *clp = app.add_subcommand("cliffords", "Export the 1-J and 2-J Clifford tables");

    DumpArgs da;
    auto *dp = app.add_subcommand("dump-hamiltonian", "Write the 8x8 Hamiltonian (and propagator) as CSV");
    dp->add_option("--j12", da.j12, "Hz");
    dp->add_option("--j23", da.j23, "Hz");
    dp->add_option("--j13", da.j13, "Hz");
    dp->add_option("--tau", da.tau_s, "Also write exp(-iH tau), s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const Context ctx{g, load_device(g.config), Executor(g.threads)};
        if (*sp) return cmd_spectrum(ctx, sa);
        if (*fp) return cmd_fingerpinch(ctx, fa);
        if (*rp) return cmd_rabi(ctx, ra);
        if (*cp) return cmd_calibrate(ctx, ca);
        if (*rbp) return cmd_rb(ctx, rba);
        if (*irbp) return cmd_irb(ctx, rba);
        if (*clp) return cmd_cliffords(ctx);
        if (*dp) return cmd_dump(ctx, da);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 4;
    } catch (const NumericFailure &e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const InvalidArgument &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
