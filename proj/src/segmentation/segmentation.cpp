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

#include "compose/segmentation/segmentation.hpp"

#include "compose/core/errors.hpp"

namespace compose {

SegmentationResult segment_image(const ImageBuffer& image, Point2 pole, const SegmentationConfig& cfg,
                                 const SegmentationInputs& inputs) {
    cfg.validate();
    require(pole.finite(), "pole must be finite");
    RegionLabelMap overseg = inputs.overseg ? *inputs.overseg : overseg_initial(image, cfg);
    BoundaryStrengthMap strengths = inputs.contours ? *inputs.contours : boundary_strength(image);
    require(overseg.width() == image.width() && overseg.height() == image.height(),
            "imported label map does not match the image size");
    require(strengths.width == image.width() && strengths.height == image.height(),
            "imported contour map does not match the image size");

    const RegionGraph graph = build_region_graph(overseg, strengths, pole, cfg.lambda);
    // Keep the whole hierarchy so callers can re-cut it; the configured
    // stop rules pick the returned labels.
    SegmentationConfig full = cfg;
    full.stop_delta = 1.0;
    full.target_regions.reset();
    MergeHierarchy hierarchy = merge_hierarchy(graph, overseg, strengths, full);

    std::size_t count = 0;
    std::size_t regions = std::size_t(overseg.num_regions());
    for (const auto& step : hierarchy.merges) {
        if (cfg.target_regions && regions <= std::size_t(*cfg.target_regions))
            break;
        if (step.weight > cfg.stop_delta)
            break;
        ++count;
        --regions;
    }
    RegionLabelMap labels = apply_merges(hierarchy, count);
    return {std::move(overseg), std::move(strengths), std::move(hierarchy), std::move(labels)};
}

} // namespace compose
