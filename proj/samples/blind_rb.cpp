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

// Blind RB with an injected depolarizing error per pulse.

#include <cstdio>

#include "aeon/benchmarking.hpp"

int main() {
    aeon::DeviceModel dev;
    aeon::RbConfig cfg;
    cfg.injected.depolarizing = 5e-4;
    const aeon::RbResult r = aeon::benchmark(cfg, dev);
    for (const auto &d : r.data.per_depth) std::printf("%4d  %.4f  %.4f\n", d.n, d.p0_id, d.p0_flip);
    std::printf("error per pulse %.3e (injected 5.0e-04)\n", r.fit.err_per_pulse);
    return 0;
}
