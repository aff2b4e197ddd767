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

#include "compose/segmentation/region_graph.hpp"

#include "compose/core/errors.hpp"

namespace compose {

double photometric_weight(std::span<const BoundaryPair> boundary, const BoundaryStrengthMap& strengths) {
    if (boundary.empty())
        throw std::logic_error("photometric_weight: empty boundary");
    double sum = 0.0;
    for (const auto& pair : boundary)
        sum += 0.5 * (double(strengths[std::size_t(pair.first)]) + double(strengths[std::size_t(pair.second)]));
    return sum / double(boundary.size());
}

double region_geometric_weight(const PolarAngleHistogram& hi, const PolarAngleHistogram& hj) {
    if (hi.total == 0 || hj.total == 0)
        return 0.0;
    return geometric_weight(hi, hj);
}

std::vector<std::vector<PixelCoord>> region_pixels(const RegionLabelMap& labels) {
    std::vector<std::vector<PixelCoord>> out(std::size_t(labels.num_regions()));
    const auto sizes = labels.region_sizes();
    for (std::size_t r = 0; r < out.size(); ++r)
        out[r].reserve(sizes[r]);
    for (int y = 0; y < labels.height(); ++y)
        for (int x = 0; x < labels.width(); ++x)
            out[std::size_t(labels.at(x, y))].push_back({x, y});
    return out;
}

RegionGraph build_region_graph(const RegionLabelMap& labels, const BoundaryStrengthMap& strengths, Point2 pole,
                               double lambda) {
    require(strengths.width == labels.width() && strengths.height == labels.height(),
            "boundary map size does not match the label map");
    require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
    RegionGraph g;
    g.width = labels.width();
    g.height = labels.height();
    g.pole = pole;
    g.lambda = lambda;
    g.regions.resize(std::size_t(labels.num_regions()));
    for (std::size_t r = 0; r < g.regions.size(); ++r)
        g.regions[r].id = std::int32_t(r);
    for (int y = 0; y < labels.height(); ++y) {
        for (int x = 0; x < labels.width(); ++x) {
            auto& node = g.regions[std::size_t(labels.at(x, y))];
            ++node.pixel_count;
            const double dx = x - pole.x;
            const double dy = y - pole.y;
            if (dx != 0.0 || dy != 0.0)
                node.histogram.add(angle_bin(polar_angle_of(dx, dy)));
        }
    }
    for (auto& adj : region_adjacency(labels)) {
        RegionEdge e;
        e.i = adj.i;
        e.j = adj.j;
        e.boundary = std::move(adj.boundary);
        e.wp = photometric_weight(e.boundary, strengths);
        e.wg = region_geometric_weight(g.regions[std::size_t(e.i)].histogram, g.regions[std::size_t(e.j)].histogram);
        e.w = combined_weight(e.wg, e.wp, lambda);
        g.edges.push_back(std::move(e));
    }
    return g;
}

} // namespace compose
