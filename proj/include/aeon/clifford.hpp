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

// Single-qubit Clifford group: closure over Clifford generators and minimal
// 1-J pulse compilation with two fixed exchange axes.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aeon/errors.hpp"
#include "aeon/su2.hpp"

namespace aeon {

inline constexpr std::size_t kCliffordGroupSize = 24;

/// A generator pulse: rotation `angle` about `axis`, not necessarily xz-plane.
struct Pulse {
    Vec3 axis = axes::z();
    double angle = 0.0;

    Rotation rotation() const { return Rotation::about(axis, angle); }
};

struct CliffordElement {
    std::size_t index = 0;
    Rotation rotation;
    /// Generator (or axis) indices; word[0] is applied first.
    std::vector<int> word;
    /// The pulses realizing `rotation`, in application order.
    std::vector<Pulse> pulses;
};

using CliffordGroup = std::vector<CliffordElement>;

namespace detail {

struct CanonicalLess {
    bool operator()(const std::array<double, 4> &a, const std::array<double, 4> &b) const {
        for (int i = 0; i < 4; ++i) {
            const double qa = std::round(a[i] * 1e8);
            const double qb = std::round(b[i] * 1e8);
            if (qa != qb) return qa < qb;
        }
        return false;
    }
};

using RotationIndex = std::map<std::array<double, 4>, std::size_t, CanonicalLess>;

// The 24 single-qubit Cliffords generated by pi/2 about x and z.
inline const std::vector<Rotation> &reference_cliffords() {
    static const std::vector<Rotation> table = [] {
        const std::array<Rotation, 2> gens{Rotation::about(axes::x(), kPi / 2),
                                           Rotation::about(axes::z(), kPi / 2)};
        std::vector<Rotation> out{Rotation::identity()};
        RotationIndex seen{{Rotation::identity().canonical(), 0}};
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (const auto &g : gens) {
                const Rotation r = compose(g, out[i]).normalized();
                if (seen.emplace(r.canonical(), out.size()).second) out.push_back(r);
            }
        }
        return out;
    }();
    return table;
}

}  // namespace detail

/// True if `r` maps Pauli axes onto Pauli axes, i.e. is one of the 24 Cliffords.
inline bool is_clifford(const Rotation &r, double tol = 1e-9) {
    for (const auto &c : detail::reference_cliffords())
        if (c.approx_equal(r, tol)) return true;
    return false;
}

/// Index of `r` within `group` (up to phase), if present.
inline std::optional<std::size_t> find_element(std::span<const CliffordElement> group,
                                               const Rotation &r, double tol = 1e-9) {
    for (const auto &e : group)
        if (e.rotation.approx_equal(r, tol)) return e.index;
    return std::nullopt;
}

/// Breadth-first closure of Clifford generators. Each element carries the
/// shortest generator word reaching it; ties go to the lexicographically
/// smallest word over the caller's generator order. Element 0 is the identity.
inline CliffordGroup generate_clifford_group(std::span<const Pulse> generators,
                                             int max_depth = 8) {
    if (generators.empty()) throw ProtocolError("generate_clifford_group: no generators");
    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (!is_clifford(generators[g].rotation()))
            throw ProtocolError("generate_clifford_group: generator " + std::to_string(g) +
                                " is not a Clifford rotation");
    }
    CliffordGroup group;
    group.push_back({0, Rotation::identity(), {}, {}});
    detail::RotationIndex seen{{Rotation::identity().canonical(), 0}};
    std::size_t level_begin = 0;
    for (int depth = 1; depth <= max_depth && group.size() < kCliffordGroupSize; ++depth) {
        const std::size_t level_end = group.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (std::size_t g = 0; g < generators.size(); ++g) {
                const Rotation r = compose(generators[g].rotation(), group[i].rotation).normalized();
                if (!seen.emplace(r.canonical(), group.size()).second) continue;
                CliffordElement e{group.size(), r, group[i].word, group[i].pulses};
                e.word.push_back(static_cast<int>(g));
                e.pulses.push_back(generators[g]);
                group.push_back(std::move(e));
            }
        }
        level_begin = level_end;
        if (level_begin == group.size()) break;
    }
    if (group.size() != kCliffordGroupSize)
        throw ProtocolError("generate_clifford_group: generators close to " +
                            std::to_string(group.size()) + " elements, not 24");
    return group;
}

/// Mean word length; the identity counts as zero pulses.
struct PulseCount {
    std::size_t total_pulses = 0;
    std::size_t elements = 0;
    double value() const {
        return elements ? static_cast<double>(total_pulses) / static_cast<double>(elements) : 0.0;
    }
};

inline PulseCount avg_pulse_count(std::span<const CliffordElement> group) {
    PulseCount c;
    for (const auto &e : group) c.total_pulses += e.pulses.size();
    c.elements = group.size();
    return c;
}

namespace detail {

// Signed angle rotating u onto v about unit axis k (components along k ignored).
inline double signed_angle_about(const Vec3 &k, const Vec3 &u, const Vec3 &v) {
    const Vec3 up = u - k.dot(u) * k;
    const Vec3 vp = v - k.dot(v) * k;
    return std::atan2(k.dot(up.cross(vp)), up.dot(vp));
}

// If r is a rotation about +/-axis (or the identity), returns the angle about
// +axis in [0, 2pi).
inline std::optional<double> angle_about(const Rotation &r, const Vec3 &axis, double tol) {
    const double along = r.v().dot(axis);
    const Vec3 perp = r.v() - along * axis;
    if (perp.norm() > tol) return std::nullopt;
    return wrap_positive(2.0 * std::atan2(along, r.w()), kTwoPi);
}

inline std::vector<Pulse> build_pulses(const std::vector<Vec3> &axes_seq,
                                       const std::vector<double> &angles) {
    std::vector<Pulse> out;
    for (std::size_t i = 0; i < angles.size(); ++i)
        out.push_back({axes_seq[i], wrap_positive(angles[i], kTwoPi)});
    return out;
}

inline Rotation product(const std::vector<Pulse> &pulses) {
    Rotation r;
    for (const auto &p : pulses) r = compose(p.rotation(), r);
    return r;
}

// Pulse angles for target = R_c(gamma) R_b(beta) R_a(alpha) with a == c,
// choosing the branch given by `sign` for beta.
inline std::optional<std::vector<double>> solve_three(const Rotation &target, const Vec3 &a,
                                                      const Vec3 &b, double sign) {
    const double ab = a.dot(b);
    const double denom = 1.0 - ab * ab;
    double cb = (a.dot(target.rotate(a)) - ab * ab) / denom;
    if (cb > 1.0 + 1e-12 || cb < -1.0 - 1e-12) return std::nullopt;
    cb = std::clamp(cb, -1.0, 1.0);
    const double beta = sign * std::acos(cb);
    const Rotation rb = Rotation::about(b, beta);
    const double gamma = signed_angle_about(a, rb.rotate(a), target.rotate(a));
    const Rotation rest = compose(compose(Rotation::about(a, gamma), rb).inverse(), target);
    const auto alpha = angle_about(rest, a, 1e-7);
    if (!alpha) return std::nullopt;
    return std::vector<double>{*alpha, beta, gamma};
}

}  // namespace detail

/// Shortest alternating sequence of rotations about two 1-J axes that equals
/// `target` up to phase. Pulses are returned in application order with
/// angles in [0, 2pi). Throws NumericFailure when no solution of length <= 4
/// verifies to 1e-9.
inline std::vector<Pulse> decompose_rotation_1j(const Rotation &target,
                                                const std::array<Vec3, 2> &pair) {
    constexpr double kVerifyTol = 1e-9;
    const Rotation t = target.normalized();
    const Vec3 a0 = pair[0].normalized();
    const Vec3 b0 = pair[1].normalized();
    if (a0.cross(b0).norm() < 1e-9)
        throw InvalidArgument("decompose_rotation_1j: axes are parallel");

    auto verified = [&](const std::vector<Pulse> &p) {
        return detail::product(p).approx_equal(t, kVerifyTol);
    };

    if (t.approx_equal(Rotation::identity(), 1e-12)) return {};

    // One pulse.
    for (const Vec3 &ax : {a0, b0}) {
        if (auto ang = detail::angle_about(t, ax, 1e-9)) {
            std::vector<Pulse> p{{ax, *ang}};
            if (verified(p)) return p;
        }
    }

    // Two pulses: t = R_second(beta) R_first(alpha).
    for (const auto &[first, second] : {std::pair{a0, b0}, std::pair{b0, a0}}) {
        // t first = R_second(beta) first  =>  second . (t first) == second . first
        const Vec3 moved = t.rotate(first);
        if (std::abs(second.dot(moved) - second.dot(first)) > 1e-9) continue;
        const double beta = detail::signed_angle_about(second, first, moved);
        const Rotation rest = compose(Rotation::about(second, beta).inverse(), t);
        if (auto alpha = detail::angle_about(rest, first, 1e-7)) {
            auto p = detail::build_pulses({first, second}, {*alpha, beta});
            if (verified(p)) return p;
        }
    }

    // Three pulses: a-b-a.
    for (const auto &[outer, inner] : {std::pair{a0, b0}, std::pair{b0, a0}}) {
        for (double sign : {1.0, -1.0}) {
            if (auto ang = detail::solve_three(t, outer, inner, sign)) {
                auto p = detail::build_pulses({outer, inner, outer}, *ang);
                if (verified(p)) return p;
            }
        }
    }

    // Four pulses: last pulse about `last`, remainder is a three-pulse
    // problem. Scan the last angle and keep the most interior solution.
    for (const auto &[last, outer] : {std::pair{b0, a0}, std::pair{a0, b0}}) {
        const double ab = outer.dot(last);
        double best_margin = -1.0;
        double best_delta = 0.0;
        constexpr int kScan = 720;
        for (int s = 0; s < kScan; ++s) {
            const double delta = kTwoPi * s / kScan;
            const Rotation rest = compose(Rotation::about(last, delta).inverse(), t);
            const double cb = (outer.dot(rest.rotate(outer)) - ab * ab) / (1.0 - ab * ab);
            const double margin = 1.0 - std::abs(cb);
            if (margin > best_margin) {
                best_margin = margin;
                best_delta = delta;
            }
        }
        if (best_margin < 0.0) continue;
        const Rotation rest = compose(Rotation::about(last, best_delta).inverse(), t);
        for (double sign : {1.0, -1.0}) {
            if (auto ang = detail::solve_three(rest, outer, last, sign)) {
                auto p = detail::build_pulses({outer, last, outer, last},
                                              {(*ang)[0], (*ang)[1], (*ang)[2], best_delta});
                if (verified(p)) return p;
            }
        }
    }
    throw NumericFailure("decompose_rotation_1j: no solution with at most four pulses");
}

/// The 24 Cliffords compiled into minimal 1-J pulse sequences over `pair`.
/// Element order follows the reference closure (element 0 is the identity);
/// word entries are 0 for pair[0] and 1 for pair[1].
inline CliffordGroup compile_clifford_group_1j(const std::array<Vec3, 2> &pair) {
    CliffordGroup group;
    const auto &refs = detail::reference_cliffords();
    for (std::size_t i = 0; i < refs.size(); ++i) {
        CliffordElement e{i, refs[i], {}, decompose_rotation_1j(refs[i], pair)};
        for (const auto &p : e.pulses)
            e.word.push_back((p.axis - pair[0].normalized()).norm() < 1e-12 ? 0 : 1);
        group.push_back(std::move(e));
    }
    return group;
}

/// Generators of the 2-J gate set: pi/2, pi, 3pi/2 about x, -x and -z.
inline std::vector<Pulse> two_j_generators() {
    std::vector<Pulse> g;
    for (const Vec3 &ax : {axes::x(), Vec3(-axes::x()), Vec3(-axes::z())})
        for (double a : {kPi / 2, kPi, 3 * kPi / 2}) g.push_back({ax, a});
    return g;
}

inline CliffordGroup two_j_clifford_group() {
    const auto gens = two_j_generators();
    return generate_clifford_group(gens);
}

/// JSON array of {index, quaternion:[w,x,y,z], word:[...]}.
inline nlohmann::ordered_json clifford_table_json(std::span<const CliffordElement> group) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &e : group) {
        nlohmann::ordered_json item;
        item["index"] = e.index;
        item["quaternion"] = {e.rotation.w(), e.rotation.v().x(), e.rotation.v().y(),
                              e.rotation.v().z()};
        item["word"] = e.word;
        arr.push_back(std::move(item));
    }
    return arr;
}

/// Element whose composition with `r` gives `target` (i.e. x * r == target).
inline std::size_t completing_element(std::span<const CliffordElement> group, const Rotation &r,
                                      const Rotation &target) {
    const Rotation needed = compose(target, r.inverse());
    if (auto idx = find_element(group, needed)) return *idx;
    throw ProtocolError("completing_element: required rotation is not in the group");
}

}  // namespace aeon
