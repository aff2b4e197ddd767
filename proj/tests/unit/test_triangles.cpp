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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "compose/core/errors.hpp"
#include "compose/lines/line_segments.hpp"
#include "compose/metrics/metrics.hpp"
#include "compose/triangles/triangles.hpp"
#include "support/synth.hpp"

using namespace compose;

namespace {

constexpr double kRad = std::numbers::pi / 180.0;

ProjectedPixelSet positions(std::initializer_list<std::pair<int, int>> ranges) {
    ProjectedPixelSet p;
    for (auto [a, b] : ranges)
        for (int i = a; i <= b; ++i)
            p.positions.push_back(i);
    return p;
}

LineSegment pixel_segment(Point2 a, Point2 b) {
    LineSegment s;
    s.p0 = a;
    s.p1 = b;
    const int steps = int(std::ceil(distance(a, b)));
    for (int i = 0; i <= steps; ++i) {
        const Point2 q = a + (b - a) * (double(i) / steps);
        PixelCoord px{int(std::lround(q.x)), int(std::lround(q.y))};
        if (s.support_pixels.empty() || !(s.support_pixels.back() == px))
            s.support_pixels.push_back(px);
    }
    return s;
}

TriangleCandidate candidate_from_rays(double deg1, double deg2, double cr, Opening opening) {
    TriangleCandidate c;
    c.apex = {200, 200};
    c.vertex_x = c.apex + Point2{std::cos(deg1 * kRad), -std::sin(deg1 * kRad)} * 100.0;
    c.vertex_y = c.apex + Point2{std::cos(deg2 * kRad), -std::sin(deg2 * kRad)} * 100.0;
    c.continuity_ratio = cr;
    c.total_ratio = 0.2;
    c.opening = opening;
    return c;
}

std::vector<TriangleCandidate> detect(const ImageBuffer& img, const RansacConfig& cfg = {}) {
    const auto segs = detect_line_segments(img, {});
    return ransac_detect(segs, cfg, img.width(), img.height());
}

} // namespace

TEST_SUITE("triangles") {

TEST_CASE("intersect analytic cases") {
    const auto p = intersect(Line2::through({0, 0}, {1, 1}), Line2::through({0, 1}, {1, 0}));
    REQUIRE(p);
    CHECK(p->x == doctest::Approx(0.5));
    CHECK(p->y == doctest::Approx(0.5));
    CHECK_FALSE(intersect(Line2::through({0, 0}, {1, 0}), Line2::through({0, 3}, {5, 3})));
    const auto q = intersect(Line2::through({0, 0}, {1, 0}), Line2::through({3, -2}, {3, 7}));
    REQUIRE(q);
    CHECK(q->x == doctest::Approx(3.0));
    CHECK(q->y == doctest::Approx(0.0).epsilon(1e-12));
    // near-parallel pairs are rejected below the minimum angle
    CHECK_FALSE(intersect(Line2::through({0, 0}, {1, 0}), Line2::through({0, 0}, {100, 15})));
    CHECK(intersect(Line2::through({0, 0}, {1, 0}), Line2::through({0, 0}, {100, 20})));
}

TEST_CASE("collect_inliers uses a band of half-width d_nb") {
    const Line2 line = Line2::through({0, 100}, {500, 100});
    const LineSegment on = pixel_segment({10, 100}, {60, 100});
    auto in = collect_inliers(line, std::span(&on, 1), 5.0);
    CHECK(in.size() == on.support_pixels.size());

    const LineSegment parallel = pixel_segment({10, 106}, {60, 106});
    CHECK(collect_inliers(line, std::span(&parallel, 1), 5.0).empty());

    const LineSegment oblique = pixel_segment({100, 60}, {140, 140});
    const auto kept = collect_inliers(line, std::span(&oblique, 1), 5.0);
    std::vector<PixelCoord> expected;
    for (const auto& p : oblique.support_pixels)
        if (std::fabs(p.y - 100.0) <= 5.0)
            expected.push_back(p);
    std::sort(expected.begin(), expected.end(), [](auto a, auto b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
    auto sorted = kept;
    std::sort(sorted.begin(), sorted.end(), [](auto a, auto b) { return std::tie(a.y, a.x) < std::tie(b.y, b.x); });
    CHECK(sorted == expected);
}

TEST_CASE("project_pixels rounds, deduplicates and splits at the origin") {
    const Line2 line = Line2::through({0, 0}, {1, 0});
    const std::vector<PixelCoord> one{{12, 0}};
    auto [pos, neg] = project_pixels(line, one, {-0.4, 0});
    CHECK(pos.positions == std::vector<int>{12});
    CHECK(neg.positions.empty());

    const std::vector<PixelCoord> origin{{5, 0}};
    auto [p0, n0] = project_pixels(line, origin, {5, 0});
    CHECK(p0.positions == std::vector<int>{0});
    CHECK(n0.positions.empty());

    std::vector<PixelCoord> run;
    for (int i = 1; i <= 50; ++i)
        run.push_back({i, 0});
    run.push_back({7, 1}); // projects onto an existing offset
    auto [pr, nr] = project_pixels(line, run, {0, 0});
    CHECK(pr.positions.size() == 50);
    CHECK(pr.positions.front() == 1);
    CHECK(pr.positions.back() == 50);

    auto [pl, nl] = project_pixels(line, run, {51, 0});
    CHECK(pl.positions.empty());
    CHECK(nl.positions.size() == 50);
    CHECK(nl.positions.front() == 1);
}

TEST_CASE("continuity_ratio analytic cases") {
    const HalfLine half{{0, 0}, {1, 0}, 0.0};
    const SideFit gap = continuity_ratio(half, positions({{0, 30}, {60, 80}}));
    CHECK(gap.ratio == 1.0);
    CHECK(gap.offset == 30);
    REQUIRE(gap.vertex);
    CHECK(gap.vertex->x == 30.0);

    const SideFit solid = continuity_ratio(half, positions({{0, 50}}));
    CHECK(solid.ratio == 1.0);
    CHECK(solid.offset == 50);

    const SideFit lone = continuity_ratio(half, positions({{100, 100}}));
    CHECK(lone.ratio == doctest::Approx(1.0 / 101.0));
    CHECK(lone.offset == 100);

    const SideFit none = continuity_ratio(half, {});
    CHECK(none.ratio == 0.0);
    CHECK_FALSE(none.vertex);
}

TEST_CASE("continuity_ratio is bounded and monotone over supersets") {
    std::mt19937_64 rng(4);
    const HalfLine half{{3, 4}, {0.6, 0.8}, 53.13};
    for (int trial = 0; trial < 200; ++trial) {
        std::set<int> base;
        std::uniform_int_distribution<int> off(0, 300);
        const int n = 1 + trial % 40;
        for (int i = 0; i < n; ++i)
            base.insert(off(rng));
        ProjectedPixelSet a{{base.begin(), base.end()}};
        for (int i = 0; i < 10; ++i)
            base.insert(off(rng));
        ProjectedPixelSet b{{base.begin(), base.end()}};
        const double ra = continuity_ratio(half, a).ratio;
        const double rb = continuity_ratio(half, b).ratio;
        CHECK(ra >= 0.0);
        CHECK(ra <= 1.0);
        CHECK(rb >= ra);
        // brute force over candidate endpoints
        double best = 0.0;
        for (std::size_t i = 0; i < a.positions.size(); ++i)
            best = std::max(best, std::min(1.0, double(i + 1) / double(a.positions[i] + 1)));
        CHECK(ra == doctest::Approx(best));
    }
}

TEST_CASE("score_triangle analytic cases") {
    const TriangleScore s = score_triangle({0, 0}, {100, 0}, {0, 100}, 0.9, 0.8, 500, 330);
    CHECK(s.continuity_ratio == doctest::Approx(0.72));
    CHECK(s.total_ratio == doctest::Approx(5000.0 / 165000.0));
    // bisector toward decreasing y
    CHECK(score_triangle({100, 200}, {50, 100}, {150, 100}, 1, 1, 500, 330).opening == Opening::Up);
    CHECK(score_triangle({100, 100}, {50, 200}, {150, 200}, 1, 1, 500, 330).opening == Opening::Down);
    CHECK(score_triangle({200, 100}, {100, 50}, {100, 150}, 1, 1, 500, 330).opening == Opening::Left);
    CHECK(score_triangle({100, 100}, {200, 50}, {200, 150}, 1, 1, 500, 330).opening == Opening::Right);
    CHECK(score_triangle({0, 0}, {10, 10}, {20, 20}, 1, 1, 500, 330).total_ratio == 0.0);
}

TEST_CASE("opening names round trip") {
    for (Opening o : {Opening::Up, Opening::Down, Opening::Left, Opening::Right})
        CHECK(parse_opening(to_string(o)) == o);
    CHECK_THROWS_AS(parse_opening("sideways"), InvalidInput);
}

TEST_CASE("ransac finds a solid two-sided triangle") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto scene = synth::render_two_sided_triangle(500, 330, 200 + seed, 0.2, 0.0);
        const auto found = detect(scene.image);
        REQUIRE_FALSE(found.empty());
        CHECK(triangle_match(scene.truth, found[0].triangle(), 0.3));
        CHECK(found[0].continuity_ratio >= 0.9);
    }
}

TEST_CASE("ransac output invariants") {
    const auto scene = synth::render_two_sided_triangle(500, 330, 31, 0.2, 0.06);
    const auto segs = detect_line_segments(scene.image, {});
    RansacConfig cfg;
    const auto found = ransac_detect(segs, cfg, 500, 330);
    for (const auto& c : found) {
        CHECK(c.continuity_ratio >= cfg.min_cr);
        CHECK(c.continuity_ratio <= 1.0);
        CHECK(c.total_ratio >= cfg.min_tr);
        CHECK(c.opening == classify_opening(c.apex, c.vertex_x, c.vertex_y));
        const TriangleScore s = score_triangle(c.apex, c.vertex_x, c.vertex_y, 1, 1, 500, 330);
        CHECK(s.total_ratio == doctest::Approx(c.total_ratio));
        const bool inside = [&] {
            for (Point2 p : {c.apex, c.vertex_x, c.vertex_y})
                if (p.x < 0 || p.y < 0 || p.x > 500 || p.y > 330)
                    return false;
            return true;
        }();
        if (inside)
            CHECK(c.total_ratio <= 0.5);
    }
    for (std::size_t i = 1; i < found.size(); ++i)
        CHECK(found[i - 1].continuity_ratio >= found[i].continuity_ratio);

    // determinism and input-order invariance
    CHECK(ransac_detect(segs, cfg, 500, 330) == found);
    auto shuffled = segs;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(9));
    CHECK(ransac_detect(shuffled, cfg, 500, 330) == found);

    // sampling path: fewer iterations than pairs
    RansacConfig sampled = cfg;
    sampled.iterations = 20;
    CHECK(ransac_detect(segs, sampled, 500, 330) == ransac_detect(shuffled, sampled, 500, 330));

    CHECK(suppress_duplicates(found, cfg.nms_delta) == found);
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            CHECK(vertex_displacement_ratio(found[j].triangle(), found[i].triangle()) > cfg.nms_delta);
}

TEST_CASE("ransac degenerate inputs") {
    const LineSegment a = pixel_segment({10, 100}, {200, 100});
    const LineSegment b = pixel_segment({250, 100}, {450, 100});
    const std::vector<LineSegment> collinear{a, b};
    CHECK(ransac_detect(collinear, {}, 500, 330).empty());
    CHECK(ransac_detect(std::span(&a, 1), {}, 500, 330).empty());
    CHECK(ransac_detect({}, {}, 500, 330).empty());
    RansacConfig bad;
    bad.d_nb = 0.0;
    CHECK_THROWS_AS(ransac_detect(collinear, bad, 500, 330), InvalidInput);
}

TEST_CASE("ransac is scale covariant") {
    const Point2 apex{250, 60}, left{90, 300}, right{420, 290};
    auto render = [&](double s) {
        ImageBuffer img = synth::canvas(int(500 * s), int(330 * s), 60);
        synth::draw_segment(img, apex * s, left * s, 2.0, 200);
        synth::draw_segment(img, apex * s, right * s, 2.0, 200);
        return img;
    };
    const auto small = detect(render(1.0));
    const auto large = detect(render(2.0));
    REQUIRE_FALSE(small.empty());
    REQUIRE_FALSE(large.empty());
    const Triangle2 scaled{small[0].apex * 2.0, small[0].vertex_x * 2.0, small[0].vertex_y * 2.0};
    CHECK(vertex_displacement_ratio(scaled, large[0].triangle()) <= 0.02);
    CHECK(std::fabs(small[0].continuity_ratio - large[0].continuity_ratio) <= 0.05);
    const TriangleScore rescored =
        score_triangle(scaled.a, scaled.b, scaled.c, small[0].continuity_ratio, 1.0, 1000, 660);
    CHECK(rescored.total_ratio == doctest::Approx(small[0].total_ratio).epsilon(1e-12));
}

TEST_CASE("match_sketch analytic cases") {
    SketchQuery q;
    q.orient1 = 0;
    q.orient2 = 90;
    q.opening = Opening::Up;
    q.validate();
    const TriangleCandidate up = candidate_from_rays(3, 88, 0.5, Opening::Up);
    CHECK(up.opening == classify_opening(up.apex, up.vertex_x, up.vertex_y));
    CHECK(match_sketch(q, std::span(&up, 1)).size() == 1);

    TriangleCandidate down = up;
    down.opening = Opening::Down;
    CHECK(match_sketch(q, std::span(&down, 1)).empty());

    const TriangleCandidate off = candidate_from_rays(15, 88, 0.5, Opening::Up);
    CHECK(match_sketch(q, std::span(&off, 1)).empty());

    // either assignment of the two sides matches
    SketchQuery swapped = q;
    std::swap(swapped.orient1, swapped.orient2);
    CHECK(match_sketch(swapped, std::span(&up, 1)).size() == 1);

    const std::vector<TriangleCandidate> three{candidate_from_rays(0, 90, 0.6, Opening::Up),
                                               candidate_from_rays(2, 92, 0.9, Opening::Up),
                                               candidate_from_rays(178, 89, 0.7, Opening::Up)};
    const auto ranked = match_sketch(q, three);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].continuity_ratio == 0.9);
    CHECK(ranked[1].continuity_ratio == 0.7);
    CHECK(ranked[2].continuity_ratio == 0.6);
}

TEST_CASE("sketch query validation") {
    SketchQuery narrow;
    narrow.orient1 = 0;
    narrow.orient2 = 20;
    CHECK_THROWS_AS(narrow.validate(), InvalidInput);
    SketchQuery range;
    range.orient1 = 180;
    CHECK_THROWS_AS(range.validate(), InvalidInput);
    SketchQuery ok;
    ok.orient1 = 60;
    ok.orient2 = 120;
    ok.opening = Opening::Down;
    CHECK_NOTHROW(ok.validate());
}

} // TEST_SUITE
