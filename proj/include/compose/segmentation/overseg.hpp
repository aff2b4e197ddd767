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

#include "compose/core/image.hpp"
#include "compose/core/label_map.hpp"
#include "compose/segmentation/config.hpp"

namespace compose {

/// Graph-based over-segmentation (Felzenszwalb-Huttenlocher): Gaussian
/// pre-smoothing, 8-connected RGB distance graph, adaptive merge threshold
/// scale/|C|, then absorption of components smaller than overseg_min_size.
RegionLabelMap overseg_initial(const ImageBuffer& image, const SegmentationConfig& cfg);

} // namespace compose
