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

#include <cmath>
#include <numbers>
#include <cstdint>
#include <vector>

namespace compose {

/// Continuous image position. y grows downward, pixel (i, j) is centered at (i, j).
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    Point2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point2&) const = default;

    double dot(Point2 o) const { return x * o.x + y * o.y; }
    double cross(Point2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

struct PixelCoord {
    int x = 0;
    int y = 0;
    bool operator==(const PixelCoord&) const = default;
    auto operator<=>(const PixelCoord& o) const {
        if (auto c = y <=> o.y; c != 0)
            return c;
        return x <=> o.x;
    }
    Point2 center() const { return {double(x), double(y)}; }
};

/// Angle of (x - pole) counter-clockwise from +x with "up" at 90 degrees, in [0, 360).
/// Throws InvalidInput when x coincides with the pole.
double polar_angle(Point2 pole, Point2 x);

/// Same as polar_angle on a displacement vector given in image coordinates.
/// Undefined (returns 0) for the zero vector; callers filter it first.
inline double polar_angle_of(double dx, double dy) {
    double deg = std::atan2(-dy, dx) * (180.0 / std::numbers::pi);
    if (deg < 0.0)
        deg += 360.0;
    if (deg >= 360.0)
        deg = 0.0;
    return deg;
}

/// Orientation of the undirected line along (dx, dy), in [0, 180), y-up convention.
inline double line_orientation(double dx, double dy) {
    double deg = std::atan2(-dy, dx) * (180.0 / std::numbers::pi);
    deg = std::fmod(deg, 180.0);
    if (deg < 0.0)
        deg += 180.0;
    if (deg >= 180.0)
        deg = 0.0;
    return deg;
}

/// Absolute difference between two undirected orientations, in [0, 90].
inline double orientation_difference(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 180.0);
    return d > 90.0 ? 180.0 - d : d;
}

struct Triangle2 {
    Point2 a;
    Point2 b;
    Point2 c;

    double signed_area() const { return 0.5 * (b - a).cross(c - a); }
    double area() const { return std::fabs(signed_area()); }
    double perimeter() const { return distance(a, b) + distance(b, c) + distance(c, a); }
    bool degenerate() const {
        const double p = perimeter();
        return p <= 0.0 || area() <= 1e-9 * p * p;
    }
};

/// Sum of vertex displacements over the perimeter of `reference`, minimized
/// over the six vertex correspondences.
inline double vertex_displacement_ratio(const Triangle2& reference, const Triangle2& other) {
    const Point2 r[3] = {reference.a, reference.b, reference.c};
    const Point2 o[3] = {other.a, other.b, other.c};
    constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    double best = INFINITY;
    for (const auto& p : perms)
        best = std::fmin(best, distance(r[0], o[p[0]]) + distance(r[1], o[p[1]]) + distance(r[2], o[p[2]]));
    return best / reference.perimeter();
}

/// Detected straight or near-straight segment with its line-support pixels.
struct LineSegment {
    Point2 p0;
    Point2 p1;
    std::vector<PixelCoord> support_pixels;
    double confidence = 0.0;

    double length() const { return distance(p0, p1); }
    double orientation() const { return line_orientation(p1.x - p0.x, p1.y - p0.y); }
    bool valid() const {
        return !(p0 == p1) && !support_pixels.empty() && confidence >= 0.0 && confidence <= 1.0;
    }
};

} // namespace compose
