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

// Fit of the closed-form fidelity surface to a final-stage map.
//
// Free parameters: B and C of both active pairs, and chi. A stays at its
// nominal value since A exp(C) only enters as a product.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "aeon/calibration/germ.hpp"
#include "aeon/calibration/sweep.hpp"
#include "aeon/device_model.hpp"
#include "aeon/errors.hpp"
#include "aeon/least_squares.hpp"
#include "aeon/rng.hpp"

namespace aeon {

struct FitOptions {
    int restarts = 8;
    double b_spread = 0.2;     // log-uniform spread of B seeds
    double chi_spread = 0.05;  // uniform spread of chi seeds, rad
    double max_rms = 0.05;     // best RMS above this is a failure
    double good_rms = 1e-9;    // stop restarting below this
    std::uint64_t seed = 0;
};

struct FitResult {
    ExchangeLaw law;  // nominal law with the two active pairs replaced
    double chi = kPi;
    double rms = 0.0;
    int restarts_used = 0;
    ExchangeVoltages final_voltages{};
};

namespace detail {

struct SurfaceModel {
    const FidelityMap *map;
    const GermConfig *cfg;
    ExchangeLaw base;
    std::array<Pair, 2> pairs;
    double tau;
    const ExchangeCrossMatrix *cross;

    ExchangeLaw law_for(const Eigen::VectorXd &x) const {
        ExchangeLaw law = base;
        law[pairs[0]].b_per_v = std::exp(x(0));
        law[pairs[0]].c = x(1);
        law[pairs[1]].b_per_v = std::exp(x(2));
        law[pairs[1]].c = x(3);
        return law;
    }

    void residuals(const Eigen::VectorXd &x, Eigen::VectorXd &r) const {
        const ExchangeLaw law = law_for(x);
        const std::size_t nb = map->cols();
        for (std::size_t cell = 0; cell < map->fidelity.size(); ++cell) {
            double model = 0.0;
            try {
                const ExchangeVector j =
                    exchange_from_voltages(map->grid.voltages(cell / nb, cell % nb), law, cross);
                const AxisAngle aa = exchange_to_rotation(j, tau);
                model = analytic_fidelity(aa.phi, aa.theta, cfg->precal.phi, x(4), cfg->n, cfg->q);
            } catch (const std::exception &) {
                model = std::numeric_limits<double>::quiet_NaN();
            }
            r(static_cast<Eigen::Index>(cell)) = model - map->fidelity[cell];
        }
    }
};

}  // namespace detail

/// Fits the final map. `peak` seeds C so that the law passes through the
/// target exchange at the detected peak; restarts perturb B and chi.
inline FitResult fit_final(const FidelityMap &map, const GermConfig &cfg, const CalibrationTarget &target,
                           const ExchangeLaw &nominal, const PeakLocation &peak, double tau,
                           const ExchangeCrossMatrix *cross = nullptr, const FitOptions &opt = {}) {
    const auto pairs = target.pairs();
    const ExchangeVector j_star = target.exchange(tau);
    detail::SurfaceModel model{&map, &cfg, nominal, pairs, tau, cross};
    const int n_values = static_cast<int>(map.fidelity.size());
    const ResidualFn fn = [&](const Eigen::VectorXd &x, Eigen::VectorXd &r) { model.residuals(x, r); };

    // Effective voltages at the peak (after the cross matrix, if any).
    const ExchangeVoltages at_peak = cross ? apply_cross(map.grid.voltages_at(peak.va, peak.vb), *cross)
                                           : map.grid.voltages_at(peak.va, peak.vb);
    auto seed_c = [&](Pair p, double b) {
        return std::log(component(j_star, p) / nominal[p].a_hz) - b * *at_peak[index(p)];
    };

    Rng rng = stream(opt.seed, {0x66697400ULL});
    std::uniform_real_distribution<double> ub(-opt.b_spread, opt.b_spread);
    std::uniform_real_distribution<double> uc(-opt.chi_spread, opt.chi_spread);

    LsqResult best;
    int used = 0;
    for (int k = 0; k < std::max(1, opt.restarts); ++k) {
        const double ba = nominal[pairs[0]].b_per_v * (k == 0 ? 1.0 : std::exp(ub(rng)));
        const double bb = nominal[pairs[1]].b_per_v * (k == 0 ? 1.0 : std::exp(ub(rng)));
        const double chi = cfg.precal.theta + (k == 0 ? 0.0 : uc(rng));
        Eigen::VectorXd x0(5);
        x0 << std::log(ba), seed_c(pairs[0], ba), std::log(bb), seed_c(pairs[1], bb), chi;
        const LsqResult r = least_squares(fn, x0, n_values);
        ++used;
        if (std::isfinite(r.rms) && r.rms < best.rms) best = r;
        if (best.rms < opt.good_rms) break;
    }
    if (!std::isfinite(best.rms) || best.rms > opt.max_rms)
        throw FitFailure("fit_final: no restart reached the residual bound", best.rms);

    FitResult out;
    out.law = model.law_for(best.params);
    out.chi = best.params(4);
    out.rms = best.rms;
    out.restarts_used = used;
    out.final_voltages = voltages_for_exchange(j_star, out.law, cross);
    return out;
}

}  // namespace aeon
