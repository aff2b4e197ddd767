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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "compose/core/geometry.hpp"

namespace compose {

/// Infinite line through `point` along the unit vector `direction`.
struct Line2 {
    Point2 point;
    Point2 direction;

    static Line2 through(Point2 a, Point2 b);
    double orientation() const { return line_orientation(direction.x, direction.y); }
    double distance_to(Point2 p) const { return std::fabs(direction.cross(p - point)); }
    Point2 project(Point2 p) const { return point + direction * direction.dot(p - point); }
};

/// Intersection of two lines, or nullopt when their orientations differ by
/// less than `min_angle` degrees.
std::optional<Point2> intersect(const Line2& l1, const Line2& l2, double min_angle = 10.0);

/// Support pixels of all segments within `d_nb` of the line, sorted and unique.
std::vector<PixelCoord> collect_inliers(const Line2& line, std::span<const LineSegment> segments, double d_nb);

struct HalfLine {
    Point2 origin;
    Point2 direction; // unit
    double source_orientation = 0.0;

    Point2 at(double offset) const { return origin + direction * offset; }
};

/// Sorted, deduplicated integer offsets from the half line's origin.
struct ProjectedPixelSet {
    std::vector<int> positions;
};

/// Projects pixels onto the line and splits them by the sign of their offset
/// from `origin`. The first set runs along +line.direction and also receives
/// offset 0; the second holds the absolute offsets of the other side.
std::pair<ProjectedPixelSet, ProjectedPixelSet> project_pixels(const Line2& line, std::span<const PixelCoord> pixels,
                                                               Point2 origin);

struct SideFit {
    double ratio = 0.0;
    std::optional<Point2> vertex;
    int offset = 0;
};

/// Best coverage ratio over endpoints at projected positions; ties go to
/// the farthest endpoint.
SideFit continuity_ratio(const HalfLine& half, const ProjectedPixelSet& proj);

enum class Opening { Up, Down, Left, Right };

std::string_view to_string(Opening opening);
Opening parse_opening(std::string_view text);

/// Direction faced by the angle at `apex`, from its internal bisector.
Opening classify_opening(Point2 apex, Point2 v1, Point2 v2);

struct TriangleScore {
    double continuity_ratio = 0.0;
    double total_ratio = 0.0;
    Opening opening = Opening::Up;
};

TriangleScore score_triangle(Point2 apex, Point2 vx, Point2 vy, double side_ratio_x, double side_ratio_y, int width,
                             int height);

struct TriangleCandidate {
    Point2 apex;
    Point2 vertex_x;
    Point2 vertex_y;
    double continuity_ratio = 0.0;
    double total_ratio = 0.0;
    Opening opening = Opening::Up;

    Triangle2 triangle() const { return {apex, vertex_x, vertex_y}; }
    double orientation_x() const { return line_orientation(vertex_x.x - apex.x, vertex_x.y - apex.y); }
    double orientation_y() const { return line_orientation(vertex_y.x - apex.x, vertex_y.y - apex.y); }
    bool operator==(const TriangleCandidate&) const = default;
};

struct RansacConfig {
    int iterations = 2000;
    double d_nb = 5.0;
    double min_cr = 0.1;
    double min_tr = 0.1;
    double min_pair_angle = 10.0;
    std::uint64_t rng_seed = 0;
    double min_segment_length = 10.0;
    double nms_delta = 0.3;

    void validate() const;
};

/// Pairs segments, intersects their supporting lines and scores the four
/// triangles per pair. When the iteration budget covers every pair, all pairs
/// are evaluated; otherwise pairs are drawn with a per-iteration seed.
/// Results are deduplicated and sorted by continuity ratio, descending.
std::vector<TriangleCandidate> ransac_detect(std::span<const LineSegment> segments, const RansacConfig& cfg, int width,
                                             int height);

/// Greedy suppression in the given order: a candidate is dropped when it
/// matches an already kept one within `delta`.
std::vector<TriangleCandidate> suppress_duplicates(std::vector<TriangleCandidate> candidates, double delta);

struct SketchQuery {
    double orient1 = 0.0;
    double orient2 = 90.0;
    Opening opening = Opening::Up;
    double orient_tolerance = 11.25;

    void validate() const;
};

std::vector<TriangleCandidate> match_sketch(const SketchQuery& query, std::span<const TriangleCandidate> candidates);

} // namespace compose
