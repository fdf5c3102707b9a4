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

// 2-D fidelity sweeps over a pair of exchange-gate voltages, and the
// filter/threshold/centroid peak finder.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aeon/calibration/germ.hpp"
#include "aeon/clifford.hpp"
#include "aeon/device_model.hpp"
#include "aeon/errors.hpp"
#include "aeon/executor.hpp"
#include "aeon/rng.hpp"

namespace aeon {

/// The two gates pulsed for a 2-J target, given the idle pair.
inline std::array<Pair, 2> active_pairs(IdlePair idle) {
    switch (idle) {
        case IdlePair::k13: return {Pair::k12, Pair::k23};
        case IdlePair::k23: return {Pair::k12, Pair::k13};
        case IdlePair::k12: return {Pair::k23, Pair::k13};
    }
    return {Pair::k12, Pair::k23};
}

inline Pair idle_as_pair(IdlePair idle) {
    switch (idle) {
        case IdlePair::k12: return Pair::k12;
        case IdlePair::k23: return Pair::k23;
        case IdlePair::k13: return Pair::k13;
    }
    return Pair::k13;
}

/// A 2-J gate to calibrate: target rotation, which coupling stays off, and
/// the pre-calibrated rotation used inside the germ.
struct CalibrationTarget {
    AxisAngle target;
    IdlePair idle = IdlePair::k13;
    AxisAngle precal;

    std::array<Pair, 2> pairs() const { return active_pairs(idle); }

    /// Ideal exchange for the target with pulse length tau.
    ExchangeVector exchange(double tau) const { return exchange_for_rotation(target, tau, idle); }
};

/// Target with the first workable idle pair (13, 23, 12) and precal pi about
/// phi* + pi/2.
inline CalibrationTarget make_calibration_target(const AxisAngle &target, double tau) {
    for (IdlePair idle : {IdlePair::k13, IdlePair::k23, IdlePair::k12}) {
        try {
            const ExchangeVector j = exchange_for_rotation(target, tau, idle);
            const auto pr = active_pairs(idle);
            if (component(j, pr[0]) <= 0.0 || component(j, pr[1]) <= 0.0) continue;
            return {target, idle, default_precal(target)};
        } catch (const InvalidArgument &) {
        }
    }
    throw InvalidArgument("calibration target is not a 2-J rotation");
}

struct SweepGrid {
    IdlePair idle = IdlePair::k13;
    std::vector<double> va;  // voltages of active pair 0 (rows)
    std::vector<double> vb;  // voltages of active pair 1 (columns)

    std::size_t size() const { return va.size() * vb.size(); }

    ExchangeVoltages voltages(std::size_t i, std::size_t j) const {
        return voltages_at(va[i], vb[j]);
    }

    ExchangeVoltages voltages_at(double a, double b) const {
        const auto pr = active_pairs(idle);
        ExchangeVoltages v;
        v[index(pr[0])] = a;
        v[index(pr[1])] = b;
        return v;
    }

    /// Square grid of `points` x `points` centered on (ca, cb).
    static SweepGrid centered(IdlePair idle, double ca, double cb, double half_width, int points) {
        if (points < 2) throw InvalidArgument("SweepGrid: need at least 2 points per axis");
        if (!(half_width > 0.0)) throw InvalidArgument("SweepGrid: half width must be > 0");
        SweepGrid g;
        g.idle = idle;
        for (int k = 0; k < points; ++k) {
            const double t = -1.0 + 2.0 * k / (points - 1);
            g.va.push_back(ca + t * half_width);
            g.vb.push_back(cb + t * half_width);
        }
        return g;
    }
};

enum class Provenance { kSimulated, kAnalytic };

struct FidelityMap {
    SweepGrid grid;
    int n = 1;
    std::vector<double> fidelity;  // row-major, rows along va
    std::vector<double> stderr_;
    Provenance provenance = Provenance::kSimulated;

    std::size_t rows() const { return grid.va.size(); }
    std::size_t cols() const { return grid.vb.size(); }
    double at(std::size_t i, std::size_t j) const { return fidelity[i * cols() + j]; }

    void validate() const {
        auto monotone = [](const std::vector<double> &v) {
            for (std::size_t k = 1; k < v.size(); ++k)
                if (!(v[k] > v[k - 1])) return false;
            return !v.empty();
        };
        if (!monotone(grid.va) || !monotone(grid.vb))
            throw ContractError("FidelityMap: axes must be strictly increasing");
        if (fidelity.size() != rows() * cols() || stderr_.size() != fidelity.size())
            throw ContractError("FidelityMap: value count does not match grid");
        for (double f : fidelity)
            if (!(f >= 0.0 && f <= 1.0)) throw ContractError("FidelityMap: value outside [0, 1]");
    }
};

/// CSV with columns v_a_V, v_b_V, fidelity, stderr.
inline void write_map_csv(std::ostream &os, const FidelityMap &map) {
    const auto pr = active_pairs(map.grid.idle);
    os << "v_x" << kPairNames[index(pr[0])] << "_V,v_x" << kPairNames[index(pr[1])]
       << "_V,fidelity,stderr\n";
    os.precision(17);
    for (std::size_t i = 0; i < map.rows(); ++i)
        for (std::size_t j = 0; j < map.cols(); ++j)
            os << map.grid.va[i] << ',' << map.grid.vb[j] << ',' << map.at(i, j) << ','
               << map.stderr_[i * map.cols() + j] << '\n';
}

enum class SweepBackend { kTwoLevel, kFullSpin };

struct SweepOptions {
    SweepBackend backend = SweepBackend::kTwoLevel;
    std::uint64_t seed = 0;
    std::uint64_t stage = 0;
    int noise_realizations = 8;  // used when noise is on and shots == 0
    double eta_error = 0.0;      // applied to the simulated precal only
    double chi_error = 0.0;
};

namespace detail {

inline Rotation probe_rotation(const ExchangeVoltages &v, const DeviceModel &model,
                               const NoiseDraw &draw) {
    const ExchangeVector j = noisy_exchange(v, model, draw);
    return Rotation::from(exchange_to_rotation(j, model.pulse_duration_s));
}

inline Matrix8c matrix_power(const Matrix8c &m, int k) {
    Matrix8c out = Matrix8c::Identity();
    Matrix8c base = m;
    while (k > 0) {
        if (k & 1) out = base * out;
        base = base * base;
        k >>= 1;
    }
    return out;
}

inline Matrix8c clifford_propagator(const CliffordElement &c, const DeviceModel &model) {
    Matrix8c u = Matrix8c::Identity();
    for (const auto &p : c.pulses) u = pulse_propagator(realize_rotation(p.axis, p.angle, model), model) * u;
    return u;
}

}  // namespace detail

/// Survival of one germ realization for each Clifford conjugation.
struct CellEvaluator {
    const GermConfig *cfg;
    const DeviceModel *model;
    const SweepOptions *opt;
    const CliffordGroup *twirl;
    const std::vector<Matrix8c> *twirl_props;  // full-spin backend only
    Rotation precal;

    std::array<double, kCliffordGroupSize> survivals(const ExchangeVoltages &v,
                                                     const NoiseDraw &draw) const {
        std::array<double, kCliffordGroupSize> out{};
        if (opt->backend == SweepBackend::kTwoLevel) {
            const Rotation u = compose_germ(detail::probe_rotation(v, *model, draw), precal, cfg->q, cfg->n);
            for (std::size_t i = 0; i < kCliffordGroupSize; ++i) {
                const Rotation &c = (*twirl)[i].rotation;
                out[i] = std::clamp(survival(compose(c.inverse(), compose(u, c))), 0.0, 1.0);
            }
            return out;
        }
        VoltagePulse probe{v, model->pulse_duration_s, std::nullopt};
        const Matrix8c r = pulse_propagator(probe, *model, draw);
        const AxisAngle pc = cfg->precal;
        const Matrix8c p = pulse_propagator(
            realize_rotation(Vec3(std::cos(pc.phi + opt->eta_error), 0.0, std::sin(pc.phi + opt->eta_error)),
                             pc.theta + opt->chi_error, *model),
            *model, draw);
        const Matrix8c rq = detail::matrix_power(r, cfg->q);
        const Matrix8c pr = p * rq;
        const Matrix8c ang = pr * pr;
        const Matrix8c ax = detail::matrix_power(r, 2 * cfg->q);
        const Matrix8c u = detail::matrix_power(ax, cfg->n) * detail::matrix_power(ang, cfg->n);
        const DensityMatrix8 rho0 = initialize_singlet();
        for (std::size_t i = 0; i < kCliffordGroupSize; ++i) {
            const Matrix8c &c = (*twirl_props)[i];
            out[i] = std::clamp(measure_p0(apply_unitary(rho0, c.adjoint() * u * c)), 0.0, 1.0);
        }
        return out;
    }
};

/// Twirled germ fidelity on every grid cell. Each cell draws from its own
/// RNG stream (seed, stage, cell), so the map does not depend on threading.
inline FidelityMap sweep_fidelity(const SweepGrid &grid, const GermConfig &cfg,
                                  const DeviceModel &model, const SweepOptions &opt = {},
                                  const Executor &exec = Executor{}) {
    cfg.validate();
    const CliffordGroup twirl = compile_clifford_group_1j({axes::z(), axes::n()});
    std::vector<Matrix8c> props;
    if (opt.backend == SweepBackend::kFullSpin)
        for (const auto &c : twirl) props.push_back(detail::clifford_propagator(c, model));
    const AxisAngle pc{cfg.precal.phi + opt.eta_error, cfg.precal.theta + opt.chi_error};
    const CellEvaluator eval{&cfg, &model, &opt, &twirl, &props, Rotation::from(pc)};

    FidelityMap map;
    map.grid = grid;
    map.n = cfg.n;
    map.fidelity.assign(grid.size(), 0.0);
    map.stderr_.assign(grid.size(), 0.0);
    const bool noisy = !model.noise.silent();
    const std::size_t nb = grid.vb.size();

    exec.parallel_for(grid.size(), [&](std::size_t cell) {
        const ExchangeVoltages v = grid.voltages(cell / nb, cell % nb);
        Rng rng = stream(opt.seed ^ model.noise.seed, {opt.stage, cell});
        double f = 0.0, err = 0.0;
        if (cfg.shots <= 0) {
            if (!noisy) {
                const auto s = eval.survivals(v, {});
                for (double x : s) f += x;
                f /= kCliffordGroupSize;
            } else {
                const int reps = std::max(1, opt.noise_realizations);
                std::vector<double> vals;
                for (int r = 0; r < reps; ++r) {
                    const auto s = eval.survivals(v, sample_noise(model.noise, rng));
                    double m = 0.0;
                    for (double x : s) m += x;
                    vals.push_back(m / kCliffordGroupSize);
                }
                for (double x : vals) f += x;
                f /= reps;
                if (reps > 1) {
                    double var = 0.0;
                    for (double x : vals) var += (x - f) * (x - f);
                    err = std::sqrt(var / (reps - 1) / reps);
                }
            }
        } else {
            std::array<std::size_t, kCliffordGroupSize> order{};
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::shuffle(order.begin(), order.end(), rng);
            std::optional<std::array<double, kCliffordGroupSize>> fixed;
            if (!noisy) fixed = eval.survivals(v, {});
            double var = 0.0;
            for (std::size_t i : order) {
                int hits = 0;
                std::optional<NoiseDraw> seq_draw;
                if (noisy && model.noise.policy == ResamplePolicy::kPerSequence)
                    seq_draw = sample_noise(model.noise, rng);
                for (int s = 0; s < cfg.shots; ++s) {
                    double p;
                    if (fixed) p = (*fixed)[i];
                    else p = eval.survivals(v, seq_draw ? *seq_draw : sample_noise(model.noise, rng))[i];
                    std::bernoulli_distribution coin(p);
                    hits += coin(rng) ? 1 : 0;
                }
                const double est = static_cast<double>(hits) / cfg.shots;
                f += est;
                var += est * (1.0 - est) / cfg.shots;
            }
            f /= kCliffordGroupSize;
            err = std::sqrt(var) / kCliffordGroupSize;
        }
        map.fidelity[cell] = std::clamp(f, 0.0, 1.0);
        map.stderr_[cell] = err;
    });
    return map;
}

/// Closed-form map for exchange law `law` (no noise).
inline FidelityMap analytic_map(const SweepGrid &grid, const GermConfig &cfg, const ExchangeLaw &law,
                                double tau, const ExchangeCrossMatrix *cross = nullptr) {
    FidelityMap map;
    map.grid = grid;
    map.n = cfg.n;
    map.provenance = Provenance::kAnalytic;
    for (std::size_t i = 0; i < grid.va.size(); ++i)
        for (std::size_t j = 0; j < grid.vb.size(); ++j) {
            const AxisAngle aa =
                exchange_to_rotation(exchange_from_voltages(grid.voltages(i, j), law, cross), tau);
            map.fidelity.push_back(analytic_fidelity(aa, cfg));
            map.stderr_.push_back(0.0);
        }
    return map;
}

struct PeakLocation {
    double va = 0.0;
    double vb = 0.0;
    double stderr_a = 0.0;  // centroid spread / sqrt(cells)
    double stderr_b = 0.0;
    double peak_value = 0.0;  // filtered maximum inside the selected region
    std::size_t cells = 0;
};

struct PeakOptions {
    double sigma_cells = 1.0;
    double threshold = 0.80;
};

namespace detail {

inline std::vector<double> gaussian_filter(const std::vector<double> &f, std::size_t rows,
                                           std::size_t cols, double sigma) {
    if (sigma <= 0.0) return f;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel;
    for (int k = -radius; k <= radius; ++k) kernel.push_back(std::exp(-0.5 * k * k / (sigma * sigma)));
    auto pass = [&](const std::vector<double> &in, bool along_rows) {
        std::vector<double> out(in.size(), 0.0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                double acc = 0.0, wsum = 0.0;
                for (int k = -radius; k <= radius; ++k) {
                    const long ii = static_cast<long>(i) + (along_rows ? k : 0);
                    const long jj = static_cast<long>(j) + (along_rows ? 0 : k);
                    if (ii < 0 || jj < 0 || ii >= static_cast<long>(rows) || jj >= static_cast<long>(cols))
                        continue;
                    const double w = kernel[k + radius];
                    acc += w * in[ii * cols + jj];
                    wsum += w;
                }
                out[i * cols + j] = acc / wsum;
            }
        return out;
    };
    return pass(pass(f, true), false);
}

}  // namespace detail

/// Gaussian filter, threshold at 80% of the filtered maximum, 4-connected
/// regions, value-weighted centroids. Chooses the region nearest `previous`,
/// or the region holding the global maximum.
inline PeakLocation find_peak(const FidelityMap &map, std::optional<std::pair<double, double>> previous = {},
                              const PeakOptions &opt = {}) {
    const std::size_t rows = map.rows(), cols = map.cols();
    if (rows == 0 || cols == 0) throw InvalidArgument("find_peak: empty map");
    const auto g = detail::gaussian_filter(map.fidelity, rows, cols, opt.sigma_cells);
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    if (!(*hi > 0.0) || *hi - *lo < 1e-9) throw DetectionError("find_peak: no peak above threshold (flat map)");
    const double thr = opt.threshold * *hi;

    std::vector<int> label(g.size(), -1);
    std::vector<PeakLocation> regions;
    std::vector<std::size_t> argmax_cell;
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (label[start] >= 0 || g[start] < thr) continue;
        const int id = static_cast<int>(regions.size());
        std::vector<std::size_t> stack{start};
        label[start] = id;
        double w = 0.0, sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, best = -1.0;
        std::size_t count = 0, best_cell = start;
        while (!stack.empty()) {
            const std::size_t c = stack.back();
            stack.pop_back();
            const std::size_t i = c / cols, j = c % cols;
            const double val = g[c];
            const double a = map.grid.va[i], b = map.grid.vb[j];
            w += val;
            sa += val * a;
            sb += val * b;
            saa += val * a * a;
            sbb += val * b * b;
            ++count;
            if (val > best) {
                best = val;
                best_cell = c;
            }
            auto push = [&](long ii, long jj) {
                if (ii < 0 || jj < 0 || ii >= static_cast<long>(rows) || jj >= static_cast<long>(cols)) return;
                const std::size_t n = ii * cols + jj;
                if (label[n] < 0 && g[n] >= thr) {
                    label[n] = id;
                    stack.push_back(n);
                }
            };
            push(static_cast<long>(i) - 1, j);
            push(static_cast<long>(i) + 1, j);
            push(i, static_cast<long>(j) - 1);
            push(i, static_cast<long>(j) + 1);
        }
        PeakLocation p;
        p.va = sa / w;
        p.vb = sb / w;
        const double var_a = std::max(0.0, saa / w - p.va * p.va);
        const double var_b = std::max(0.0, sbb / w - p.vb * p.vb);
        p.stderr_a = std::sqrt(var_a / count);
        p.stderr_b = std::sqrt(var_b / count);
        p.peak_value = best;
        p.cells = count;
        regions.push_back(p);
        argmax_cell.push_back(best_cell);
    }
    if (regions.empty()) throw DetectionError("find_peak: no cell above threshold");

    std::size_t pick = 0;
    if (previous) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < regions.size(); ++r) {
            const double d = std::hypot(regions[r].va - previous->first, regions[r].vb - previous->second);
            if (d < best) {
                best = d;
                pick = r;
            }
        }
    } else {
        for (std::size_t r = 1; r < regions.size(); ++r)
            if (regions[r].peak_value > regions[pick].peak_value) pick = r;
    }
    return regions[pick];
}

}  // namespace aeon
