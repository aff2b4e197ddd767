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

#include "compose/triangles/triangles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>

#include "compose/core/errors.hpp"
#include "compose/core/parallel.hpp"

namespace compose {

namespace {

Point2 unit(Point2 v) {
    const double n = v.norm();
    return {v.x / n, v.y / n};
}

bool candidate_before(const TriangleCandidate& a, const TriangleCandidate& b) {
    if (a.continuity_ratio != b.continuity_ratio)
        return a.continuity_ratio > b.continuity_ratio;
    if (a.total_ratio != b.total_ratio)
        return a.total_ratio > b.total_ratio;
    auto key = [](const TriangleCandidate& c) {
        return std::tuple(c.apex.x, c.apex.y, c.vertex_x.x, c.vertex_x.y, c.vertex_y.x, c.vertex_y.y);
    };
    return key(a) < key(b);
}

auto segment_key(const LineSegment& s) {
    const auto [lo, hi] = std::minmax(std::pair(s.p0.x, s.p0.y), std::pair(s.p1.x, s.p1.y));
    return std::tuple(lo, hi, s.support_pixels.size(), s.confidence);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

Line2 Line2::through(Point2 a, Point2 b) {
    require(!(a == b), "a line needs two distinct points");
    return {a, unit(b - a)};
}

std::optional<Point2> intersect(const Line2& l1, const Line2& l2, double min_angle) {
    if (orientation_difference(l1.orientation(), l2.orientation()) < min_angle)
        return std::nullopt;
    const double denom = l1.direction.cross(l2.direction);
    if (denom == 0.0)
        return std::nullopt;
    const double t = (l2.point - l1.point).cross(l2.direction) / denom;
    return l1.point + l1.direction * t;
}

std::vector<PixelCoord> collect_inliers(const Line2& line, std::span<const LineSegment> segments, double d_nb) {
    require(d_nb > 0.0, "d_nb must be positive");
    std::vector<PixelCoord> out;
    for (const auto& s : segments)
        for (const auto& q : s.support_pixels)
            if (line.distance_to(q.center()) <= d_nb)
                out.push_back(q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<ProjectedPixelSet, ProjectedPixelSet> project_pixels(const Line2& line, std::span<const PixelCoord> pixels,
                                                               Point2 origin) {
    std::pair<ProjectedPixelSet, ProjectedPixelSet> out;
    for (const auto& q : pixels) {
        const long offset = std::lround(line.direction.dot(q.center() - origin));
        if (offset >= 0)
            out.first.positions.push_back(int(offset));
        else
            out.second.positions.push_back(int(-offset));
    }
    for (auto* set : {&out.first, &out.second}) {
        std::sort(set->positions.begin(), set->positions.end());
        set->positions.erase(std::unique(set->positions.begin(), set->positions.end()), set->positions.end());
    }
    return out;
}

SideFit continuity_ratio(const HalfLine& half, const ProjectedPixelSet& proj) {
    SideFit fit;
    if (proj.positions.empty())
        return fit;
    // Compare (k+1)/(x+1) exactly in integers.
    std::int64_t best_num = 0, best_den = 1;
    for (std::size_t k = 0; k < proj.positions.size(); ++k) {
        const std::int64_t num = std::int64_t(k) + 1;
        const std::int64_t den = std::int64_t(proj.positions[k]) + 1;
        if (num * best_den >= best_num * den) {
            best_num = num;
            best_den = den;
            fit.offset = proj.positions[k];
        }
    }
    fit.ratio = std::min(1.0, double(best_num) / double(best_den));
    fit.vertex = half.at(fit.offset);
    return fit;
}

std::string_view to_string(Opening opening) {
    switch (opening) {
    case Opening::Up:
        return "up";
    case Opening::Down:
        return "down";
    case Opening::Left:
        return "left";
    case Opening::Right:
        return "right";
    }
    return "up";
}

Opening parse_opening(std::string_view text) {
    for (Opening o : {Opening::Up, Opening::Down, Opening::Left, Opening::Right})
        if (to_string(o) == text)
            return o;
    throw InvalidInput("unknown opening '" + std::string(text) + "' (expected up, down, left or right)");
}

Opening classify_opening(Point2 apex, Point2 v1, Point2 v2) {
    const Point2 a = v1 - apex;
    const Point2 b = v2 - apex;
    if (a.norm() == 0.0 || b.norm() == 0.0)
        return Opening::Right;
    const Point2 bis = unit(a) + unit(b);
    const double deg = polar_angle_of(bis.x, bis.y);
    if (deg >= 45.0 && deg < 135.0)
        return Opening::Up;
    if (deg >= 135.0 && deg < 225.0)
        return Opening::Left;
    if (deg >= 225.0 && deg < 315.0)
        return Opening::Down;
    return Opening::Right;
}

TriangleScore score_triangle(Point2 apex, Point2 vx, Point2 vy, double side_ratio_x, double side_ratio_y, int width,
                             int height) {
    require(width > 0 && height > 0, "image size must be positive");
    TriangleScore s;
    s.continuity_ratio = side_ratio_x * side_ratio_y;
    const Triangle2 t{apex, vx, vy};
    s.total_ratio = t.degenerate() ? 0.0 : t.area() / (double(width) * double(height));
    s.opening = classify_opening(apex, vx, vy);
    return s;
}

void RansacConfig::validate() const {
    require(iterations >= 1, "iterations must be at least 1");
    require(d_nb > 0.0, "d_nb must be positive");
    require(min_cr >= 0.0 && min_cr <= 1.0, "min_cr must lie in [0, 1]");
    require(min_tr >= 0.0 && min_tr <= 1.0, "min_tr must lie in [0, 1]");
    require(min_pair_angle > 0.0 && min_pair_angle < 90.0, "min_pair_angle must lie in (0, 90)");
    require(min_segment_length >= 0.0, "min_segment_length must be non-negative");
    require(nms_delta > 0.0, "nms_delta must be positive");
}

std::vector<TriangleCandidate> suppress_duplicates(std::vector<TriangleCandidate> candidates, double delta) {
    std::vector<TriangleCandidate> kept;
    for (auto& c : candidates) {
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const TriangleCandidate& k) {
            return vertex_displacement_ratio(k.triangle(), c.triangle()) <= delta;
        });
        if (!duplicate)
            kept.push_back(std::move(c));
    }
    return kept;
}

std::vector<TriangleCandidate> ransac_detect(std::span<const LineSegment> input, const RansacConfig& cfg, int width,
                                             int height) {
    cfg.validate();
    require(width > 0 && height > 0, "image size must be positive");
    std::vector<LineSegment> segments;
    for (const auto& s : input)
        if (!(s.p0 == s.p1) && s.length() >= cfg.min_segment_length)
            segments.push_back(s);
    std::sort(segments.begin(), segments.end(),
              [](const LineSegment& a, const LineSegment& b) { return segment_key(a) < segment_key(b); });
    const std::size_t n = segments.size();
    if (n < 2)
        return {};

    std::vector<Line2> lines;
    std::vector<std::vector<PixelCoord>> inliers(n);
    for (const auto& s : segments)
        lines.push_back(Line2::through(s.p0, s.p1));
    parallel_for(n, [&](std::size_t i) { inliers[i] = collect_inliers(lines[i], segments, cfg.d_nb); });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::uint64_t total_pairs = std::uint64_t(n) * (n - 1) / 2;
    if (total_pairs <= std::uint64_t(cfg.iterations)) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                pairs.emplace_back(i, j);
    } else {
        for (int t = 0; t < cfg.iterations; ++t) {
            std::mt19937_64 rng(splitmix64(cfg.rng_seed ^ splitmix64(std::uint64_t(t))));
            const std::size_t i = rng() % n;
            std::size_t j = rng() % (n - 1);
            if (j >= i)
                ++j;
            pairs.emplace_back(std::min(i, j), std::max(i, j));
        }
    }

    // Intersections farther than this from the frame cannot yield a usable side.
    const double reach = 4.0 * std::hypot(double(width), double(height));
    const Point2 mid{0.5 * width, 0.5 * height};

    std::vector<std::vector<TriangleCandidate>> found(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const auto apex = intersect(lines[i], lines[j], cfg.min_pair_angle);
        if (!apex || !apex->finite() || distance(*apex, mid) > reach)
            return;
        const auto [pi_pos, pi_neg] = project_pixels(lines[i], inliers[i], *apex);
        const auto [pj_pos, pj_neg] = project_pixels(lines[j], inliers[j], *apex);
        const double oi = lines[i].orientation();
        const double oj = lines[j].orientation();
        const HalfLine hi[2] = {{*apex, lines[i].direction, oi}, {*apex, lines[i].direction * -1.0, oi}};
        const HalfLine hj[2] = {{*apex, lines[j].direction, oj}, {*apex, lines[j].direction * -1.0, oj}};
        const ProjectedPixelSet* si[2] = {&pi_pos, &pi_neg};
        const ProjectedPixelSet* sj[2] = {&pj_pos, &pj_neg};
        for (int a = 0; a < 2; ++a) {
            const SideFit fx = continuity_ratio(hi[a], *si[a]);
            if (!fx.vertex)
                continue;
            for (int b = 0; b < 2; ++b) {
                const SideFit fy = continuity_ratio(hj[b], *sj[b]);
                if (!fy.vertex)
                    continue;
                const TriangleScore s = score_triangle(*apex, *fx.vertex, *fy.vertex, fx.ratio, fy.ratio, width, height);
                if (s.continuity_ratio < cfg.min_cr || s.total_ratio < cfg.min_tr || s.total_ratio <= 0.0)
                    continue;
                found[p].push_back({*apex, *fx.vertex, *fy.vertex, s.continuity_ratio, s.total_ratio, s.opening});
            }
        }
    });

    std::vector<TriangleCandidate> all;
    for (auto& f : found)
        all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end(), candidate_before);
    return suppress_duplicates(std::move(all), cfg.nms_delta);
}

void SketchQuery::validate() const {
    require(orient1 >= 0.0 && orient1 < 180.0 && orient2 >= 0.0 && orient2 < 180.0,
            "sketch orientations must lie in [0, 180)");
    require(orient_tolerance > 0.0 && orient_tolerance < 90.0, "orientation tolerance must lie in (0, 90)");
    // Some choice of ray directions along the two orientations has to open
    // the requested way with an included angle in [45, 135].
    constexpr double rad = std::numbers::pi / 180.0;
    bool ok = false;
    for (double a : {orient1, orient1 + 180.0}) {
        for (double b : {orient2, orient2 + 180.0}) {
            const Point2 ra{std::cos(a * rad), -std::sin(a * rad)};
            const Point2 rb{std::cos(b * rad), -std::sin(b * rad)};
            const double included = std::acos(std::clamp(ra.dot(rb), -1.0, 1.0)) / rad;
            if (included >= 45.0 - 1e-9 && included <= 135.0 + 1e-9 && classify_opening({}, ra, rb) == opening)
                ok = true;
        }
    }
    require(ok, "sketch sides must form an angle in [45, 135] degrees opening " + std::string(to_string(opening)));
}

std::vector<TriangleCandidate> match_sketch(const SketchQuery& query, std::span<const TriangleCandidate> candidates) {
    query.validate();
    const double tol = query.orient_tolerance;
    std::vector<TriangleCandidate> out;
    for (const auto& c : candidates) {
        if (c.opening != query.opening)
            continue;
        const double sx = c.orientation_x();
        const double sy = c.orientation_y();
        const bool direct = orientation_difference(sx, query.orient1) <= tol && orientation_difference(sy, query.orient2) <= tol;
        const bool swapped = orientation_difference(sx, query.orient2) <= tol && orientation_difference(sy, query.orient1) <= tol;
        if (direct || swapped)
            out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(), [](const TriangleCandidate& a, const TriangleCandidate& b) {
        return a.continuity_ratio > b.continuity_ratio;
    });
    return out;
}

} // namespace compose
