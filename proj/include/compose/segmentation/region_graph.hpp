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
#include <span>
#include <vector>

#include "compose/core/label_map.hpp"
#include "compose/segmentation/boundary.hpp"
#include "compose/segmentation/polar_histogram.hpp"

namespace compose {

struct RegionNode {
    std::int32_t id = 0;
    std::uint64_t pixel_count = 0;
    PolarAngleHistogram histogram;
};

struct RegionEdge {
    std::int32_t i = 0;
    std::int32_t j = 0;
    std::vector<BoundaryPair> boundary;
    double wp = 0.0; // photometric
    double wg = 0.0; // geometric
    double w = 0.0;  // combined
};

struct RegionGraph {
    int width = 0;
    int height = 0;
    Point2 pole;
    double lambda = 0.0;
    std::vector<RegionNode> regions; // indexed by region ID
    std::vector<RegionEdge> edges;   // sorted by (i, j)
};

/// Mean strength over the boundary, each pair contributing the average of
/// its two pixels. Summation follows the pair order, so equal sorted lists
/// give bit-identical results.
double photometric_weight(std::span<const BoundaryPair> boundary, const BoundaryStrengthMap& strengths);

inline double combined_weight(double wg, double wp, double lambda) { return lambda * wg + (1.0 - lambda) * wp; }

/// Geometric weight between two regions; a region whose only pixel is the
/// pole carries no angular evidence and yields 0.
double region_geometric_weight(const PolarAngleHistogram& hi, const PolarAngleHistogram& hj);

/// Builds nodes (with polar histograms about `pole`) and fully weighted edges.
RegionGraph build_region_graph(const RegionLabelMap& labels, const BoundaryStrengthMap& strengths, Point2 pole,
                               double lambda);

/// Pixel lists per region, in scan order.
std::vector<std::vector<PixelCoord>> region_pixels(const RegionLabelMap& labels);

} // namespace compose
