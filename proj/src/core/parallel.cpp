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

#include "compose/core/parallel.hpp"

#include <cstdlib>
#include <string>

namespace compose {

int worker_count() {
    int requested = 0;
    if (const char* env = std::getenv("COMPOSE_THREADS")) {
        try {
            requested = std::stoi(env);
        } catch (...) {
            requested = 0;
        }
    }
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace compose
