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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aeon {

// Error taxonomy. Every error thrown by the library derives from one of the
// std exception bases so callers that only care about "bad input" vs
// "numerics went wrong" can catch at that level.

/// Malformed or out-of-domain argument (negative durations, NaNs, ...).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition on a value (Hermiticity, unitarity) is violated.
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Bad or inconsistent configuration (singular matrices, missing keys).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exponential or similar evaluation left the representable range.
struct RangeError : std::range_error {
    using std::range_error::range_error;
};

/// A generator set or sequence does not obey the required group structure.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical procedure (solver, decomposition) failed to produce a result.
struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No peak could be located in a fidelity map.
struct DetectionError : NumericFailure {
    using NumericFailure::NumericFailure;
};

/// A least-squares fit did not converge. Carries the best residual seen.
struct FitFailure : NumericFailure {
    FitFailure(const std::string &what, double best_residual)
        : NumericFailure(what), best_residual(best_residual) {}
    double best_residual;
};

/// The calibration lost track of the central peak between stages.
struct CalibrationDiverged : NumericFailure {
    CalibrationDiverged(const std::string &what, std::size_t stage_index)
        : NumericFailure(what), stage_index(stage_index) {}
    std::size_t stage_index;
};

}  // namespace aeon
