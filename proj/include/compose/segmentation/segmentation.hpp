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

#include "compose/core/image.hpp"
#include "compose/core/label_map.hpp"
#include "compose/segmentation/boundary.hpp"
#include "compose/segmentation/config.hpp"
#include "compose/segmentation/merge.hpp"
#include "compose/segmentation/overseg.hpp"
#include "compose/segmentation/region_graph.hpp"

namespace compose {

/// Externally computed inputs replacing the built-in stages.
struct SegmentationInputs {
    std::optional<RegionLabelMap> overseg;
    std::optional<BoundaryStrengthMap> contours;
};

struct SegmentationResult {
    RegionLabelMap overseg;
    BoundaryStrengthMap strengths;
    MergeHierarchy hierarchy;
    RegionLabelMap labels;
};

/// Full geometric segmentation about a known vanishing point.
SegmentationResult segment_image(const ImageBuffer& image, Point2 pole, const SegmentationConfig& cfg,
                                 const SegmentationInputs& inputs = {});

} // namespace compose
