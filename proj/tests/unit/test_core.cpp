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

#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "compose/core/errors.hpp"
#include "compose/core/geometry.hpp"
#include "compose/core/image.hpp"
#include "compose/core/label_map.hpp"
#include "compose/core/parallel.hpp"
#include "support/synth.hpp"
#include "support/temp_dir.hpp"

using namespace compose;

TEST_SUITE("core") {

TEST_CASE("resize_canonical scales the long side to 500") {
    CHECK(resize_canonical(ImageBuffer(1000, 660)).width() == 500);
    CHECK(resize_canonical(ImageBuffer(1000, 660)).height() == 330);
    const ImageBuffer portrait = resize_canonical(ImageBuffer(660, 1000));
    CHECK(portrait.width() == 330);
    CHECK(portrait.height() == 500);
    ImageBuffer same(500, 330);
    same.set(3, 4, 10, 20, 30);
    CHECK(resize_canonical(same) == same);
}

TEST_CASE("resize_canonical rejects images below 8x8") {
    CHECK_THROWS_AS(resize_canonical(ImageBuffer(7, 100)), InvalidInput);
    CHECK_THROWS_AS(resize_canonical(ImageBuffer(100, 7)), InvalidInput);
    CHECK_NOTHROW(resize_canonical(ImageBuffer(8, 8)));
}

TEST_CASE("resize_canonical keeps the aspect ratio within a pixel") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> side(8, 1600);
    for (int i = 0; i < 200; ++i) {
        const int w = side(rng), h = side(rng);
        const ImageBuffer out = resize_canonical(ImageBuffer(w, h));
        CHECK(std::max(out.width(), out.height()) == 500);
        const double ideal = 500.0 * std::min(w, h) / std::max(w, h);
        const int got = std::min(out.width(), out.height());
        if (ideal >= 8.0)
            CHECK(std::fabs(got - ideal) <= 1.0);
        else
            CHECK(got == 8);
    }
}

TEST_CASE("polar_angle axis cases") {
    CHECK(polar_angle({0, 0}, {1, 0}) == 0.0);
    CHECK(polar_angle({0, 0}, {0, -1}) == 90.0);
    CHECK(polar_angle({5, 5}, {4, 5}) == 180.0);
    CHECK(polar_angle({0, 0}, {0, 1}) == 270.0);
    CHECK(polar_angle({0, 0}, {1, -1}) == doctest::Approx(45.0));
    CHECK_THROWS_AS(polar_angle({2, 3}, {2, 3}), InvalidInput);
}

TEST_CASE("polar_angle of the point reflection differs by 180 degrees") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(-300, 300);
    for (int i = 0; i < 1000; ++i) {
        const Point2 p{coord(rng), coord(rng)};
        const Point2 x{coord(rng), coord(rng)};
        const double a = polar_angle(p, x);
        const double b = polar_angle(p, p * 2.0 - x);
        CHECK(a >= 0.0);
        CHECK(a < 360.0);
        const double diff = std::fmod(a + 180.0 - b + 720.0, 360.0);
        CHECK(std::min(diff, 360.0 - diff) < 1e-9);
    }
}

TEST_CASE("line_orientation and orientation_difference") {
    CHECK(line_orientation(1, 0) == 0.0);
    CHECK(line_orientation(-1, 0) == 0.0);
    CHECK(line_orientation(0, -1) == 90.0);
    CHECK(line_orientation(1, 1) == doctest::Approx(135.0));
    CHECK(orientation_difference(3, 178) == doctest::Approx(5.0));
    CHECK(orientation_difference(0, 90) == doctest::Approx(90.0));
}

TEST_CASE("region_adjacency on minimal maps") {
    const auto pair = region_adjacency(RegionLabelMap(2, 1, {0, 1}));
    REQUIRE(pair.size() == 1);
    CHECK(pair[0].i == 0);
    CHECK(pair[0].j == 1);
    CHECK(pair[0].boundary.size() == 1);

    CHECK(region_adjacency(RegionLabelMap(4, 4, std::vector<std::int32_t>(16, 0))).empty());

    const auto stripes = region_adjacency(RegionLabelMap(3, 2, {0, 1, 2, 0, 1, 2}));
    REQUIRE(stripes.size() == 2);
    CHECK(stripes[0].i == 0);
    CHECK(stripes[0].j == 1);
    CHECK(stripes[1].i == 1);
    CHECK(stripes[1].j == 2);
    CHECK(stripes[0].boundary.size() == 2);
}

TEST_CASE("region_adjacency matches a brute-force 4-neighbour scan") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RegionLabelMap map = synth::random_region_map(17, 13, 9, seed);
        const auto edges = region_adjacency(map);
        std::set<std::pair<int, int>> expected;
        std::size_t pairs = 0;
        for (int y = 0; y < map.height(); ++y)
            for (int x = 0; x < map.width(); ++x)
                for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
                    if (x + dx >= map.width() || y + dy >= map.height())
                        continue;
                    const int a = map.at(x, y), b = map.at(x + dx, y + dy);
                    if (a != b) {
                        expected.insert({std::min(a, b), std::max(a, b)});
                        ++pairs;
                    }
                }
        std::set<std::pair<int, int>> got;
        std::size_t got_pairs = 0;
        for (const auto& e : edges) {
            CHECK(e.i < e.j);
            got.insert({e.i, e.j});
            got_pairs += e.boundary.size();
        }
        CHECK(got == expected);
        CHECK(got_pairs == pairs);
    }
}

TEST_CASE("label maps require contiguous labels") {
    CHECK_THROWS_AS(RegionLabelMap(2, 1, {0, 2}), InvalidInput);
    CHECK_THROWS_AS(RegionLabelMap(2, 1, {0}), InvalidInput);
    const RegionLabelMap r = RegionLabelMap::relabeled(3, 1, std::vector<std::int32_t>{7, 3, 7});
    CHECK(r.num_regions() == 2);
    CHECK(r.at(0, 0) == r.at(2, 0));
}

TEST_CASE("label map and image PNG round trips") {
    test::TempDir dir;
    const RegionLabelMap map = synth::random_labels(31, 17, 400, 3);
    save_label_map(map, dir.path() / "labels.png");
    CHECK(load_label_map(dir.path() / "labels.png") == map);

    ImageBuffer img(9, 11);
    for (int y = 0; y < 11; ++y)
        for (int x = 0; x < 9; ++x)
            img.set(x, y, std::uint8_t(x * 20), std::uint8_t(y * 20), std::uint8_t(x + y));
    save_image(img, dir.path() / "img.png");
    CHECK(load_image(dir.path() / "img.png") == img);
    CHECK_THROWS_AS(load_image(dir.path() / "missing.png"), InvalidInput);
}

TEST_CASE("resample_nearest keeps a map unchanged at its own size") {
    const RegionLabelMap map = synth::random_region_map(20, 10, 5, 1);
    CHECK(resample_nearest(map, 20, 10) == map);
    const RegionLabelMap half = resample_nearest(map, 10, 5);
    CHECK(half.width() == 10);
    CHECK(half.num_regions() <= 5);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 4);
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
        if (i == 5)
            throw std::runtime_error("boom");
    }, 3), std::runtime_error);
}

} // TEST_SUITE
