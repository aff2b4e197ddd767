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

#include "compose/segmentation/config.hpp"

#include "compose/core/errors.hpp"

namespace compose {

void SegmentationConfig::validate() const {
    require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
    require(stop_delta >= 0.0 && stop_delta <= 1.0, "stop_delta must lie in [0, 1]");
    require(!target_regions || *target_regions >= 1, "target region count must be at least 1");
    require(overseg_min_size >= 1, "overseg_min_size must be at least 1");
    require(overseg_scale > 0.0, "overseg_scale must be positive");
}

} // namespace compose
