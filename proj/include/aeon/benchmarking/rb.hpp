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

// Blind randomized benchmarking on the simulated device.
//
// Every depth carries two ensembles: sequences compiling to the identity and
// sequences compiling to a pi flip about x. The difference of their survival
// decays as a p^N (qubit error), the sum as c0 + c1 lambda^N (leakage).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aeon/clifford.hpp"
#include "aeon/device_model.hpp"
#include "aeon/errors.hpp"
#include "aeon/executor.hpp"
#include "aeon/rng.hpp"
#include "aeon/spin_hilbert.hpp"
#include "aeon/su2.hpp"

namespace aeon {

enum class CliffordSet { kOneJ, kTwoJ };

inline const char *clifford_set_name(CliffordSet s) { return s == CliffordSet::kOneJ ? "1J" : "2J"; }

inline CliffordGroup make_clifford_set(CliffordSet s) {
    return s == CliffordSet::kOneJ ? compile_clifford_group_1j({axes::z(), axes::n()})
                                   : two_j_clifford_group();
}

/// Gate interleaved after every random Clifford.
struct InterleavedGate {
    std::string label;
    Rotation rotation;
    std::vector<Pulse> pulses;
    double extra_depolarizing = 0.0;  // injected average infidelity per application
};

/// Channels added after every physical pulse, on top of the device model.
struct InjectedErrors {
    double depolarizing = 0.0;  // average gate infidelity per pulse
    double leakage = 0.0;       // qubit -> S = 3/2 transfer probability per pulse
};

struct RbConfig {
    CliffordSet set = CliffordSet::kTwoJ;
    std::vector<int> depths{2, 4, 8, 16, 32, 64, 128};
    int sequences = 30;     // per depth and ensemble
    int repetitions = 250;  // noise realizations per sequence
    int shots = 10;         // 0: exact probabilities
    std::uint64_t seed = 0;
    InjectedErrors injected{};
    std::optional<InterleavedGate> interleaved;

    void validate() const {
        if (depths.empty()) throw InvalidArgument("RbConfig: no depths");
        for (std::size_t k = 0; k < depths.size(); ++k) {
            if (depths[k] < 1) throw InvalidArgument("RbConfig: depths must be >= 1");
            if (k > 0 && depths[k] <= depths[k - 1]) throw InvalidArgument("RbConfig: depths must ascend");
        }
        if (sequences < 1) throw InvalidArgument("RbConfig: sequences must be >= 1");
        if (repetitions < 1) throw InvalidArgument("RbConfig: repetitions must be >= 1");
        if (shots < 0) throw InvalidArgument("RbConfig: shots must be >= 0");
        const auto in01 = [](double x) { return x >= 0.0 && x <= 0.5; };
        if (!in01(injected.depolarizing) || !(injected.leakage >= 0.0 && injected.leakage <= 1.0))
            throw InvalidArgument("RbConfig: injected error out of range");
        if (interleaved && !in01(interleaved->extra_depolarizing))
            throw InvalidArgument("RbConfig: interleaved excess out of range");
    }
};

enum class RbTarget { kIdentity, kFlip };

struct RbSequence {
    int depth = 1;
    RbTarget target = RbTarget::kIdentity;
    std::vector<std::size_t> cliffords;  // group indices, applied first to last
    bool interleaved = false;
};

/// Ideal rotation of a sequence (interleaved gate after all but the last Clifford).
inline Rotation sequence_rotation(const RbSequence &s, std::span<const CliffordElement> group,
                                  const std::optional<InterleavedGate> &gate) {
    Rotation r;
    for (std::size_t k = 0; k < s.cliffords.size(); ++k) {
        r = compose(group[s.cliffords[k]].rotation, r);
        if (s.interleaved && gate && k + 1 < s.cliffords.size()) r = compose(gate->rotation, r);
    }
    return r;
}

inline Rotation rb_target_rotation(RbTarget t) {
    return t == RbTarget::kIdentity ? Rotation{} : Rotation::about(axes::x(), kPi);
}

/// depth - 1 uniform random Cliffords plus one completing element. Streams
/// are keyed by (seed, ensemble, depth index, sequence index).
inline std::vector<RbSequence> generate_sequences(const RbConfig &cfg, std::span<const CliffordElement> group) {
    cfg.validate();
    if (group.size() != kCliffordGroupSize) throw InvalidArgument("generate_sequences: need 24 Cliffords");
    const bool inter = cfg.interleaved.has_value();
    if (inter && !is_clifford(cfg.interleaved->rotation))
        throw InvalidArgument("generate_sequences: interleaved gate must be a Clifford");
    std::vector<RbSequence> out;
    for (std::size_t d = 0; d < cfg.depths.size(); ++d) {
        for (RbTarget t : {RbTarget::kIdentity, RbTarget::kFlip}) {
            for (int k = 0; k < cfg.sequences; ++k) {
                Rng rng = stream(cfg.seed, {static_cast<std::uint64_t>(t), d, static_cast<std::uint64_t>(k),
                                            inter ? 1ULL : 0ULL});
                std::uniform_int_distribution<std::size_t> pick(0, kCliffordGroupSize - 1);
                RbSequence s{cfg.depths[d], t, {}, inter};
                Rotation acc;
                for (int m = 0; m + 1 < cfg.depths[d]; ++m) {
                    const std::size_t c = pick(rng);
                    s.cliffords.push_back(c);
                    acc = compose(group[c].rotation, acc);
                    if (inter) acc = compose(cfg.interleaved->rotation, acc);
                }
                s.cliffords.push_back(completing_element(group, acc, rb_target_rotation(t)));
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

namespace detail {

// Qubit-factor Paulis extended by the identity on the leakage block.
inline const std::array<Matrix8c, 3> &encoded_paulis() {
    static const std::array<Matrix8c, 3> table = [] {
        const auto &b = encoded_basis();
        std::array<Matrix8c, 3> out;
        const std::array<Matrix2c, 3> s{pauli::x(), pauli::y(), pauli::z()};
        for (int k = 0; k < 3; ++k) {
            out[k] = b.p_leak;
            for (int g = 0; g < 2; ++g) {
                const std::array<const Vector8c *, 2> kets{&b.zero[g], &b.one[g]};
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) out[k] += s[k](r, c) * (*kets[r]) * kets[c]->adjoint();
            }
        }
        return out;
    }();
    return table;
}

inline Matrix8c depolarize(const Matrix8c &rho, double infidelity) {
    if (infidelity <= 0.0) return rho;
    const double p = 2.0 * infidelity;  // Bloch shrink 1 - p
    Matrix8c out = (1.0 - 0.75 * p) * rho;
    for (const auto &s : encoded_paulis()) out += 0.25 * p * s * rho * s.adjoint();
    return out;
}

inline Matrix8c leak(const Matrix8c &rho, double l) {
    if (l <= 0.0) return rho;
    const auto &b = encoded_basis();
    const Matrix8c pq = b.p0 + b.p1;
    const Matrix8c k0 = std::sqrt(1.0 - l) * pq + b.p_leak;
    Matrix8c out = k0 * rho * k0.adjoint();
    for (int g = 0; g < 2; ++g) {
        const Vector8c &dst = b.leak[1 + g];  // same m_S
        for (const Vector8c *src : {&b.zero[g], &b.one[g]}) {
            const Matrix8c k = std::sqrt(l) * dst * src->adjoint();
            out += k * rho * k.adjoint();
        }
    }
    return out;
}

}  // namespace detail

/// Survival statistics of one sequence.
struct SequenceOutcome {
    double p0 = 0.0;
    double leakage = 0.0;
};

/// Executes sequences on the device: physical pulses from the voltage model,
/// a fresh noise draw per repetition (or per sequence), injected channels
/// after each pulse, and optional idle evolution between pulses.
class RbRunner {
  public:
    RbRunner(const RbConfig &cfg, const DeviceModel &device)
        : cfg_(cfg), device_(device), group_(make_clifford_set(cfg.set)) {
        for (const auto &e : group_) {
            std::vector<std::size_t> idx;
            for (const auto &p : e.pulses) idx.push_back(pulse_index(p));
            clifford_pulses_.push_back(std::move(idx));
        }
        if (cfg.interleaved)
            for (const auto &p : cfg.interleaved->pulses) gate_pulses_.push_back(pulse_index(p));
        if (device.noise.silent()) cached_ = propagators({});
    }

    const CliffordGroup &group() const { return group_; }

    SequenceOutcome run(const RbSequence &s, Rng &rng) const {
        const bool noisy = !device_.noise.silent();
        const int reps = noisy ? cfg_.repetitions : 1;
        double p0 = 0.0, leak = 0.0;
        std::optional<std::vector<Matrix8c>> per_seq;
        if (noisy && device_.noise.policy == ResamplePolicy::kPerSequence)
            per_seq = propagators(sample_noise(device_.noise, rng));
        for (int r = 0; r < reps; ++r) {
            std::vector<Matrix8c> fresh;
            Matrix8c idle = Matrix8c::Identity();
            NoiseDraw draw{};
            if (noisy && !per_seq) {
                draw = sample_noise(device_.noise, rng);
                fresh = propagators(draw);
            }
            const std::vector<Matrix8c> &props = per_seq ? *per_seq : (noisy ? fresh : cached_);
            if (device_.idle_time_s > 0.0) idle = idle_propagator(device_.idle_time_s, device_, draw);
            Matrix8c rho = initialize_singlet().matrix();
            auto apply = [&](std::size_t pulse, double extra) {
                rho = props[pulse] * rho * props[pulse].adjoint();
                rho = detail::depolarize(rho, cfg_.injected.depolarizing + extra);
                rho = detail::leak(rho, cfg_.injected.leakage);
                if (device_.idle_time_s > 0.0) rho = idle * rho * idle.adjoint();
            };
            for (std::size_t k = 0; k < s.cliffords.size(); ++k) {
                for (std::size_t p : clifford_pulses_[s.cliffords[k]]) apply(p, 0.0);
                if (s.interleaved && cfg_.interleaved && k + 1 < s.cliffords.size()) {
                    for (std::size_t p : gate_pulses_) apply(p, 0.0);
                    rho = detail::depolarize(rho, cfg_.interleaved->extra_depolarizing);
                }
            }
            const DensityMatrix8 out = DensityMatrix8::unchecked(0.5 * (rho + rho.adjoint()));
            p0 += std::clamp(measure_p0(out), 0.0, 1.0);
            leak += leakage_population(out);
        }
        p0 /= reps;
        leak /= reps;
        if (cfg_.shots > 0) {
            const int trials = cfg_.shots * cfg_.repetitions;
            std::binomial_distribution<int> draw(trials, p0);
            p0 = static_cast<double>(draw(rng)) / trials;
        }
        return {p0, leak};
    }

  private:
    std::size_t pulse_index(const Pulse &p) {
        for (std::size_t i = 0; i < pulses_.size(); ++i)
            if ((pulses_[i].axis - p.axis).norm() < 1e-12 && std::abs(pulses_[i].angle - p.angle) < 1e-12)
                return i;
        pulses_.push_back(p);
        realized_.push_back(realize_rotation(p.axis, p.angle, device_));
        return pulses_.size() - 1;
    }

    std::vector<Matrix8c> propagators(const NoiseDraw &draw) const {
        std::vector<Matrix8c> out;
        out.reserve(realized_.size());
        for (const auto &v : realized_) out.push_back(pulse_propagator(v, device_, draw));
        return out;
    }

    RbConfig cfg_;
    DeviceModel device_;
    CliffordGroup group_;
    std::vector<Pulse> pulses_;
    std::vector<VoltagePulse> realized_;
    std::vector<std::vector<std::size_t>> clifford_pulses_;
    std::vector<std::size_t> gate_pulses_;
    std::vector<Matrix8c> cached_;
};

struct DepthPoint {
    int n = 0;
    double p0_id = 0.0;
    double p0_flip = 0.0;
    double stderr_id = 0.0;
    double stderr_flip = 0.0;
    double leakage = 0.0;  // mean leaked population, both ensembles
};

struct RbData {
    std::vector<DepthPoint> per_depth;
    double avg_pulses = 0.0;  // per Clifford (interleaved gate excluded)
};

/// Runs both ensembles. Results depend only on (cfg, device), not on the
/// number of threads.
inline RbData run_rb(const std::vector<RbSequence> &sequences, const RbConfig &cfg, const DeviceModel &device,
                     const Executor &exec = Executor{}) {
    const RbRunner runner(cfg, device);
    std::vector<SequenceOutcome> outcomes(sequences.size());
    exec.parallel_for(sequences.size(), [&](std::size_t i) {
        Rng rng = stream(cfg.seed ^ device.noise.seed, {0x72756eULL, i, sequences[i].interleaved ? 1ULL : 0ULL});
        outcomes[i] = runner.run(sequences[i], rng);
    });

    RbData data;
    data.avg_pulses = avg_pulse_count(runner.group()).value();
    for (int depth : cfg.depths) {
        std::vector<double> id, flip;
        double leak = 0.0;
        for (std::size_t i = 0; i < sequences.size(); ++i) {
            if (sequences[i].depth != depth) continue;
            (sequences[i].target == RbTarget::kIdentity ? id : flip).push_back(outcomes[i].p0);
            leak += outcomes[i].leakage;
        }
        auto mean_se = [](const std::vector<double> &v) {
            double m = 0.0;
            for (double x : v) m += x;
            m /= static_cast<double>(v.size());
            double var = 0.0;
            for (double x : v) var += (x - m) * (x - m);
            const double se = v.size() > 1 ? std::sqrt(var / (v.size() - 1) / v.size()) : 0.0;
            return std::pair{m, se};
        };
        const auto [mi, si] = mean_se(id);
        const auto [mf, sf] = mean_se(flip);
        data.per_depth.push_back({depth, mi, mf, si, sf, leak / static_cast<double>(id.size() + flip.size())});
    }
    return data;
}

}  // namespace aeon
