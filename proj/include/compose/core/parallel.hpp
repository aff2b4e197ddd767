// Copyright 2026 The compose Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
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

namespace compose {

/// Worker cap from COMPOSE_THREADS (0 or unset means hardware concurrency).
int worker_count();

/// Runs fn(i) for i in [0, n). Work is handed out dynamically; the first
/// exception thrown by any worker is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, int workers = worker_count()) {
    const std::size_t nthreads = std::min<std::size_t>(std::max(workers, 1), n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(nthreads - 1);
    for (std::size_t t = 1; t < nthreads; ++t)
        pool.emplace_back(body);
    body();
    pool.clear();
    if (error)
        std::rethrow_exception(error);
}

} // namespace compose
