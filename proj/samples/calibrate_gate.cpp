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

// Calibrates a -z pi/2 gate on the default device and prints the residual
// angle errors.

#include <cstdio>

#include "aeon/calibration.hpp"
#include "aeon/device_config.hpp"

int main(int argc, char **argv) {
    const std::string path = argc > 1 ? argv[1] : "configs/device.json";
    const aeon::DeviceModel dev = aeon::load_device(path);
    const aeon::CalibrationResult r = aeon::run_calibration({-aeon::kPi / 2, aeon::kPi / 2}, dev);
    for (const auto &s : r.stages) std::printf("N=%2d  peak %.6f V, %.6f V\n", s.n, s.peak.va, s.peak.vb);
    const auto [dphi, dtheta] = aeon::calibration_error(r);
    std::printf("dphi = %.3e rad  dtheta = %.3e rad\n", dphi, dtheta);
    return 0;
}
