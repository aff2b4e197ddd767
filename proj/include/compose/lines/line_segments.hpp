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

#include <cstdint>
#include <optional>
#include <vector>

#include "compose/core/geometry.hpp"
#include "compose/core/grid.hpp"
#include "compose/core/image.hpp"
#include "compose/segmentation/boundary.hpp"

namespace compose {

struct LsdConfig {
    double angle_tolerance = 22.5;   // degrees
    double density_threshold = 0.2;  // minimum share of aligned points in the rectangle
    double magnitude_threshold = 2.0; // gradient cutoff on the 0-255 scale
    double nfa_epsilon = 1.0;
    double alpha = 0.5; // confidence filter keeps segments within [(1-alpha)C, C]

    void validate() const;
};

/// Gradients on a 2x2 stencil. Sample (x, y) describes the block whose
/// top-left pixel is (x, y); the last row and column are never usable.
struct LevelLineField {
    int width = 0;
    int height = 0;
    Grid<float> angle;     // level-line orientation in [0, 180), y-up convention
    Grid<float> magnitude;
    Grid<std::uint8_t> usable;

    bool is_usable(int x, int y) const { return usable(x, y) != 0; }
};

struct LineSupportRegion {
    std::vector<PixelCoord> pixels; // pixels[0] is the seed
    double mean_angle = 0.0;
};

/// Rectangle approximating a line-support region.
struct RectApprox {
    Point2 center;
    Point2 direction; // unit, image coordinates
    double length = 0.0;
    double width = 0.0;
    double axis_angle = 0.0; // orientation in [0, 180)
    std::uint64_t pixel_count = 0;
    std::uint64_t aligned_count = 0;
    double density = 0.0;

    Point2 end0() const { return center - direction * (0.5 * length); }
    Point2 end1() const { return center + direction * (0.5 * length); }
};

LevelLineField level_line_field(const ImageBuffer& image, double magnitude_threshold = 2.0);

/// Seeds in decreasing gradient magnitude; 8-connected growth admits pixels
/// whose orientation is within the tolerance of the running mean.
std::vector<LineSupportRegion> grow_regions(const LevelLineField& field, const LsdConfig& cfg);

/// Weighted-inertia rectangle for the region, with aligned-point statistics.
RectApprox region_rect(const std::vector<PixelCoord>& pixels, const LevelLineField& field, double tolerance);

/// log10 of the binomial tail P[X >= k], X ~ Bin(n, p).
double log10_binomial_tail(std::uint64_t n, std::uint64_t k, double p);

/// log10 NFA of a rectangle with n pixels and k aligned ones in a width x height image.
double log10_nfa(std::uint64_t n, std::uint64_t k, double p, int width, int height);

/// Fits, refines and validates one region. Returns a segment (confidence 0)
/// only when NFA <= epsilon and the rectangle density reaches the threshold.
std::optional<LineSegment> rect_and_validate(const LineSupportRegion& region, const LevelLineField& field,
                                             const LsdConfig& cfg);

/// Scores each segment by its peak contour confidence, then keeps those at
/// or above (1 - alpha) times the best score.
std::vector<LineSegment> confidence_filter(std::vector<LineSegment> segments, const ContourMap& contours,
                                           double alpha);

/// Level-line field, region growing, validation and confidence filtering.
/// Without a contour map the boundary strength map is used.
std::vector<LineSegment> detect_line_segments(const ImageBuffer& image, const LsdConfig& cfg,
                                              const ContourMap* contours = nullptr);

} // namespace compose
