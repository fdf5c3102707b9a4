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

#pragma once

#include <algorithm>
#include <cmath>

#include "aeon/errors.hpp"

namespace aeon {

/// Chebyshev polynomial of the first kind. Trigonometric form on [-1, 1],
/// hyperbolic form outside.
inline double chebyshev_t(int m, double x) {
    if (m < 0) throw InvalidArgument("chebyshev_t: order must be >= 0");
    if (std::abs(x) <= 1.0) return std::cos(m * std::acos(x));
    const double sign = (x < 0.0 && (m % 2)) ? -1.0 : 1.0;
    return sign * std::cosh(m * std::acosh(std::abs(x)));
}

/// Chebyshev polynomial of the second kind, U_m(cos t) = sin((m+1)t)/sin t.
inline double chebyshev_u(int m, double x) {
    if (m < 0) throw InvalidArgument("chebyshev_u: order must be >= 0");
    if (std::abs(x) <= 1.0) {
        const double t = std::acos(x);
        const double s = std::sin(t);
        if (std::abs(s) < 1e-8) {
            // Limit at x = +/-1, including the first-order correction in t.
            const double endpoint = (x > 0.0 || m % 2 == 0) ? (m + 1.0) : -(m + 1.0);
            const double tt = x > 0.0 ? t : (3.14159265358979323846 - t);
            return endpoint * (1.0 - tt * tt * m * (m + 2.0) / 6.0);
        }
        return std::sin((m + 1) * t) / s;
    }
    double u0 = 1.0, u1 = 2.0 * x;
    if (m == 0) return u0;
    for (int k = 1; k < m; ++k) {
        const double u2 = 2.0 * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

/// Spread polynomial S_m(x) = [1 - T_m(1 - 2x)] / 2, so S_m(sin^2 a) = sin^2(m a).
/// Evaluated as sin^2(m asin(sqrt x)) on [0, 1].
inline double spread_polynomial(int m, double x) {
    if (m < 0) throw InvalidArgument("spread_polynomial: order must be >= 0");
    if (x >= 0.0 && x <= 1.0) {
        const double s = std::sin(m * std::asin(std::sqrt(x)));
        return s * s;
    }
    return 0.5 * (1.0 - chebyshev_t(m, 1.0 - 2.0 * x));
}

}  // namespace aeon
