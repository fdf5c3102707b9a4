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
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace aeon {

/// Runs independent work items indexed 0..n-1. Results must be written to
/// per-index slots by the callee, so output never depends on scheduling.
class Executor {
  public:
    /// threads == 0 selects std::thread::hardware_concurrency().
    explicit Executor(unsigned threads = 1) : threads_(resolve(threads)) {}

    unsigned threads() const { return threads_; }

    template <typename F>
    void parallel_for(std::size_t n, F &&body) const {
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads_, n));
        if (workers <= 1) {
            for (std::size_t i = 0; i < n; ++i) body(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto run = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(n);
                    return;
                }
            }
        };
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        }
        if (error) std::rethrow_exception(error);
    }

  private:
    static unsigned resolve(unsigned t) {
        if (t != 0) return t;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    unsigned threads_;
};

}  // namespace aeon
