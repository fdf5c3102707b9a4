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

#include <gtest/gtest.h>

#include "aeon/clifford.hpp"
#include "oracles.hpp"

namespace aeon {
namespace {

Rotation product(const std::vector<Pulse> &pulses) {
    oracle::M2 u = oracle::id2();
    for (const auto &p : pulses) u = oracle::rot_axis(p.axis.x(), p.axis.y(), p.axis.z(), p.angle) * u;
    return Rotation::from_unitary(u);
}

bool in_oracle_group(const Rotation &r) {
    for (const auto &c : oracle::clifford_group())
        if (oracle::phase_infidelity(c, to_unitary(r)) < 1e-12) return true;
    return false;
}

TEST(Clifford, OracleGroupHas24Elements) { EXPECT_EQ(oracle::clifford_group().size(), 24u); }

TEST(Clifford, TwoJClosure) {
    const CliffordGroup g = two_j_clifford_group();
    ASSERT_EQ(g.size(), 24u);
    for (const auto &e : g) {
        EXPECT_TRUE(in_oracle_group(e.rotation));
        EXPECT_TRUE(product(e.pulses).approx_equal(e.rotation, 1e-12));
    }
    EXPECT_NEAR(avg_pulse_count(g).value(), 44.0 / 24.0, 1e-12);
}

TEST(Clifford, OneJCompiledSet) {
    const CliffordGroup g = compile_clifford_group_1j({axes::z(), axes::n()});
    ASSERT_EQ(g.size(), 24u);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_TRUE(in_oracle_group(g[i].rotation));
        EXPECT_TRUE(product(g[i].pulses).approx_equal(g[i].rotation, 1e-9));
        for (const auto &p : g[i].pulses) {
            const bool on_axis = (p.axis - axes::z()).norm() < 1e-12 || (p.axis - axes::n()).norm() < 1e-12;
            EXPECT_TRUE(on_axis);
        }
        for (std::size_t k = 0; k < i; ++k) EXPECT_FALSE(g[i].rotation.approx_equal(g[k].rotation, 1e-9));
    }
    EXPECT_NEAR(avg_pulse_count(g).value(), 64.0 / 24.0, 1e-12);
}

TEST(Clifford, GroupIsClosedUnderProducts) {
    const CliffordGroup g = two_j_clifford_group();
    for (const auto &a : g)
        for (const auto &b : g) EXPECT_TRUE(find_element(g, compose(a.rotation, b.rotation)).has_value());
}

TEST(Clifford, HadamardAndYDecompositions) {
    const std::array<Vec3, 2> pair{axes::z(), axes::n()};
    const Rotation h = Rotation::about(Vec3(1, 0, 1), kPi);
    const auto ph = decompose_rotation_1j(h, pair);
    EXPECT_LE(ph.size(), 3u);
    EXPECT_TRUE(product(ph).approx_equal(h, 1e-9));
    const Rotation y = Rotation::about(axes::y(), kPi);
    const auto py = decompose_rotation_1j(y, pair);
    // No three-pulse z/n word reaches pi about y (axes 120 degrees apart).
    EXPECT_EQ(py.size(), 4u);
    EXPECT_TRUE(product(py).approx_equal(y, 1e-9));
}

TEST(Clifford, NonCliffordGeneratorRejected) {
    const std::vector<Pulse> gens{{axes::n(), kPi / 2}, {axes::z(), kPi / 2}};
    EXPECT_THROW(generate_clifford_group(gens), ProtocolError);
}

TEST(Clifford, CompletingElement) {
    const CliffordGroup g = two_j_clifford_group();
    const Rotation r = compose(g[5].rotation, g[17].rotation);
    const Rotation target = Rotation::about(axes::x(), kPi);
    const std::size_t k = completing_element(g, r, target);
    EXPECT_TRUE(compose(g[k].rotation, r).approx_equal(target, 1e-12));
}

}  // namespace
}  // namespace aeon
