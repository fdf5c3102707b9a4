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

#include "aeon/spin_hilbert.hpp"
#include "oracles.hpp"

namespace aeon {
namespace {

TEST(SpinHilbert, HamiltonianMatchesKroneckerOracle) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 2e8);
    for (int t = 0; t < 50; ++t) {
        const ExchangeVector j{u(rng), u(rng), u(rng)};
        FieldConfig f;
        f.global_b = 1e-3 * (t % 5);
        f.gradients = {u(rng) * 1e-3, -u(rng) * 1e-3, u(rng) * 1e-3};
        const double fb = f.zeeman_hz();
        const oracle::M8 ref = oracle::hamiltonian(
            j.j12, j.j23, j.j13, {fb + f.gradients[0], fb + f.gradients[1], fb + f.gradients[2]});
        const Matrix8c h = build_hamiltonian(j, f).m;
        EXPECT_LT((h - ref).norm(), 1e-9 * ref.norm());
    }
}

TEST(SpinHilbert, EqualExchangeGap) {
    const double f = 37e6;
    const Spectrum s = eigenspectrum(build_hamiltonian({f, f, f}));
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.values(k), -0.75 * kTwoPi * f, 1e-6);
    for (int k = 4; k < 8; ++k) EXPECT_NEAR(s.values(k), 0.75 * kTwoPi * f, 1e-6);
    EXPECT_NEAR((s.values(4) - s.values(3)) / (1.5 * kTwoPi * f), 1.0, 1e-12);
}

TEST(SpinHilbert, SingleCouplingSpectrum) {
    const double f = 20e6;
    const Spectrum s = eigenspectrum(build_hamiltonian({f, 0.0, 0.0}));
    EXPECT_NEAR(s.values(0), -0.75 * kTwoPi * f, 1e-6);
    EXPECT_NEAR(s.values(1), -0.75 * kTwoPi * f, 1e-6);
    for (int k = 2; k < 8; ++k) EXPECT_NEAR(s.values(k), 0.25 * kTwoPi * f, 1e-6);
}

TEST(SpinHilbert, PropagatorMatchesTaylor) {
    const Hamiltonian8 h = build_hamiltonian({31e6, 57e6, 12e6}, {0.002, {1e6, -2e6, 3e5}});
    const double tau = 13e-9;
    const oracle::M8 ref = oracle::expm_taylor<oracle::M8>(oracle::cplx(0, -tau) * h.m);
    EXPECT_LT((propagator(h, tau) - ref).norm(), 1e-10);
    EXPECT_LT((propagator(h, 0.0) - Matrix8c::Identity()).norm(), 1e-15);
}

TEST(SpinHilbert, MHatPiPulseFromZero) {
    const double f = 50e6;
    const DensityMatrix8 rho = evolve_const(initialize_singlet(), build_hamiltonian({f, 0, 0}), 1.0 / (2 * f));
    EXPECT_NEAR(measure_p0(rho), 0.25, 1e-10);
    EXPECT_NEAR(leakage_population(rho), 0.0, 1e-12);
}

TEST(SpinHilbert, EncodedBasisOrthonormal) {
    const auto &b = encoded_basis();
    std::vector<Vector8c> all{b.zero[0], b.zero[1], b.one[0], b.one[1]};
    for (const auto &v : b.leak) all.push_back(v);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t k = 0; k < all.size(); ++k)
            EXPECT_NEAR(std::abs(all[i].dot(all[k])), i == k ? 1.0 : 0.0, 1e-12);
    EXPECT_LT((b.p0 + b.p1 + b.p_leak - Matrix8c::Identity()).norm(), 1e-12);
}

TEST(SpinHilbert, ExchangeDoesNotLeak) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1e8);
    for (int t = 0; t < 20; ++t) {
        const Hamiltonian8 h = build_hamiltonian({u(rng), u(rng), u(rng)});
        EXPECT_LT(leakage_population(evolve_const(initialize_singlet(), h, 1e-8)), 1e-12);
    }
}

TEST(SpinHilbert, GradientsCoupleLeakage) {
    const Hamiltonian8 h = build_hamiltonian({0, 0, 0}, {0.0, {5e6, -5e6, 0}});
    EXPECT_GT(leakage_population(evolve_const(initialize_singlet(), h, 5e-8)), 1e-3);
}

TEST(SpinHilbert, RejectsBadInput) {
    EXPECT_THROW(build_hamiltonian({-1.0, 0, 0}), InvalidArgument);
    EXPECT_THROW(propagator(build_hamiltonian({1e6, 0, 0}), -1e-9), InvalidArgument);
    Matrix8c m = Matrix8c::Zero();
    m(0, 1) = 1.0;
    EXPECT_THROW(Hamiltonian8::from_matrix(m), ContractError);
}

}  // namespace
}  // namespace aeon
