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
#include <span>
#include <vector>

#include "compose/core/geometry.hpp"
#include "compose/core/image.hpp"
#include "compose/core/label_map.hpp"
#include "compose/triangles/triangles.hpp"
#include "compose/vp/vanishing_point.hpp"

namespace compose {

struct OverlayContent {
    const RegionLabelMap* regions = nullptr; // painted with per-region mean colors
    std::span<const LineSegment> segments;   // 1 px green
    std::span<const TriangleCandidate> triangles; // two sides, 2 px red
    std::optional<Point2> vp;                // 6 px yellow disc
};

ImageBuffer draw_overlay(const ImageBuffer& image, const OverlayContent& content);

/// Score grid upsampled to width x height with a jet color map; cells the
/// search skipped are black.
ImageBuffer render_heatmap(const VpScoreMap& map, int width, int height);

/// Thumbnails scaled to `thumb_width` and tiled row by row.
ImageBuffer contact_sheet(std::span<const ImageBuffer> images, int columns = 4, int thumb_width = 160);

} // namespace compose
