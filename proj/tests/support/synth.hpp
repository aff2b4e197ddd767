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

#include <array>
#include <cstdint>
#include <vector>

#include "compose/core/geometry.hpp"
#include "compose/core/image.hpp"
#include "compose/core/label_map.hpp"

namespace compose::synth {

using Rgb = std::array<double, 3>;

/// Scene partitioned into angular sectors around a vanishing point.
struct PlaneScene {
    ImageBuffer image;
    RegionLabelMap planes; // ground truth, one label per sector
    Point2 vp;
};

/// Sectors bounded by rays from `vp` at the given polar angles (degrees,
/// ascending). Each sector gets its color; `bands` modulates brightness by
/// log distance from the vanishing point with the given amplitude and
/// `stripes` adds radial brightness stripes inside every sector.
struct PlaneSpec {
    int width = 500;
    int height = 330;
    Point2 vp{250, 165};
    std::vector<double> boundaries;
    std::vector<Rgb> colors;
    double band_amplitude = 0.0;
    double band_period = 0.35; // in log-distance units
    int stripes = 0;
    double stripe_amplitude = 0.0;
    double noise = 0.0;
    std::uint64_t seed = 1;
};

PlaneScene render_planes(const PlaneSpec& spec);

/// Corridor: four planes meeting the frame corners, with radial stripes.
PlaneScene render_corridor(int width, int height, Point2 vp, std::uint64_t seed);

/// Star: alternating sectors radiating from the vanishing point.
PlaneScene render_star(int width, int height, Point2 vp, int rays, std::uint64_t seed);

/// Two or three planes around a random vanishing point whose colors differ
/// only slightly, crossed by strong bands at log-spaced distances.
PlaneScene render_ambiguous_planes(int width, int height, int planes, std::uint64_t seed);

/// Blank canvas of a uniform gray level.
ImageBuffer canvas(int width, int height, double gray);

/// Antialiased stroke of the given width, blended toward `value`.
void draw_segment(ImageBuffer& img, Point2 a, Point2 b, double width, double value);

/// Antialiased circular arc from angle a0 to a1 (degrees, image polar angles).
void draw_arc(ImageBuffer& img, Point2 center, double radius, double a0, double a1, double width, double value);

/// Adds clamped Gaussian noise.
void add_noise(ImageBuffer& img, double sigma, std::uint64_t seed);

struct TwoSidedTriangle {
    ImageBuffer image;
    Triangle2 truth; // apex first
    std::vector<std::pair<Point2, Point2>> clutter;
};

/// Two sides of a triangle drawn from its apex, each with one occlusion gap,
/// plus random clutter strokes.
/// `gap_fraction` is the gap length relative to its side; 0 draws solid sides.
TwoSidedTriangle render_two_sided_triangle(int width, int height, std::uint64_t seed, double clutter_fraction = 0.2,
                                           double gap_fraction = 0.06);

} // namespace compose::synth

namespace compose::synth {

/// Voronoi partition of a width x height grid around `regions` random seeds.
/// Every seed keeps at least its own pixel, so the map has exactly `regions`
/// labels when regions <= width * height.
RegionLabelMap random_region_map(int width, int height, int regions, std::uint64_t seed);

/// Uniform random labels in [0, regions), relabeled to a contiguous range.
RegionLabelMap random_labels(int width, int height, int regions, std::uint64_t seed);

} // namespace compose::synth
