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

#include <optional>

namespace compose {

struct SegmentationConfig {
    double lambda = 0.6;      // weight of the geometric cue
    double stop_delta = 0.55; // merging stops once the cheapest edge exceeds this
    std::optional<int> target_regions;
    int overseg_min_size = 20;
    double overseg_scale = 100.0;

    void validate() const;
};

} // namespace compose
