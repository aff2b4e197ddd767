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
#include <limits>
#include <map>
#include <random>

#include "compose/core/errors.hpp"
#include "compose/metrics/metrics.hpp"
#include "support/synth.hpp"

using namespace compose;

namespace {

RegionLabelMap row(std::vector<std::int32_t> labels) {
    const int n = int(labels.size());
    return RegionLabelMap::relabeled(n, 1, labels);
}

double rand_index_pairs(const RegionLabelMap& a, const RegionLabelMap& b) {
    std::uint64_t agree = 0, total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            agree += (a[i] == a[j]) == (b[i] == b[j]);
            ++total;
        }
    return double(agree) / double(total);
}

double voi_entropies(const RegionLabelMap& a, const RegionLabelMap& b) {
    std::map<int, double> pa, pb;
    std::map<std::pair<int, int>, double> pab;
    const double n = double(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa[a[i]] += 1 / n;
        pb[b[i]] += 1 / n;
        pab[{a[i], b[i]}] += 1 / n;
    }
    double ha = 0, hb = 0, hab = 0;
    for (auto [k, p] : pa)
        ha -= p * std::log2(p);
    for (auto [k, p] : pb)
        hb -= p * std::log2(p);
    for (auto [k, p] : pab)
        hab -= p * std::log2(p);
    // H(A|B) + H(B|A) = 2 H(A,B) - H(A) - H(B)
    return 2 * hab - ha - hb;
}

double covering_scan(const RegionLabelMap& covered, const RegionLabelMap& cover) {
    double sum = 0.0;
    for (int r = 0; r < covered.num_regions(); ++r) {
        double best = 0.0, size = 0.0;
        for (int s = 0; s < cover.num_regions(); ++s) {
            double inter = 0, uni = 0;
            for (std::size_t p = 0; p < covered.size(); ++p) {
                const bool in_r = covered[p] == r, in_s = cover[p] == s;
                inter += in_r && in_s;
                uni += in_r || in_s;
            }
            best = std::max(best, inter / uni);
        }
        for (std::size_t p = 0; p < covered.size(); ++p)
            size += covered[p] == r;
        sum += size * best;
    }
    return sum / double(covered.size());
}

Triangle2 shifted(const Triangle2& t, Point2 da, Point2 db, Point2 dc) { return {t.a + da, t.b + db, t.c + dc}; }

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("rand index analytic cases") {
    const RegionLabelMap pairs = row({0, 0, 1, 1});
    CHECK(rand_index(pairs, pairs) == 1.0);
    CHECK(rand_index(pairs, row({0, 0, 0, 0})) == doctest::Approx(2.0 / 6.0));
    CHECK(rand_index(row({0, 0, 0, 0}), row({0, 1, 2, 3})) == 0.0);
    CHECK_THROWS_AS(rand_index(pairs, row({0, 1, 2})), InvalidInput);
}

TEST_CASE("rand index matches all-pairs enumeration") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> side(1, 15), regions(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const int w = side(rng), h = side(rng);
        if (w * h < 2)
            continue;
        const auto a = synth::random_labels(w, h, regions(rng), rng());
        const auto b = synth::random_labels(w, h, regions(rng), rng());
        CHECK(rand_index(a, b) == doctest::Approx(rand_index_pairs(a, b)).epsilon(1e-12));
        CHECK(rand_index(a, b) == rand_index(b, a));
    }
}

TEST_CASE("variation of information analytic cases") {
    const RegionLabelMap halves = row({0, 0, 1, 1});
    CHECK(variation_of_information(halves, halves) == 0.0);
    CHECK(variation_of_information(row({0, 1, 2, 3}), row({0, 0, 0, 0})) == doctest::Approx(2.0));
    CHECK(variation_of_information(halves, row({0, 0, 0, 0})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(variation_of_information(halves, row({0})), InvalidInput);
}

TEST_CASE("variation of information matches entropies and vanishes only for equal partitions") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = synth::random_labels(9, 7, 1 + trial % 6, rng());
        const auto b = synth::random_labels(9, 7, 1 + trial % 5, rng());
        const double v = variation_of_information(a, b);
        CHECK(v == doctest::Approx(voi_entropies(a, b)).epsilon(1e-9));
        CHECK(v == doctest::Approx(variation_of_information(b, a)));
        CHECK((v == 0.0) == (a == b));
        CHECK((rand_index(a, b) == 1.0) == (a == b));
        // relabeling keeps the partition
        std::vector<std::int32_t> permuted(a.labels().begin(), a.labels().end());
        for (auto& l : permuted)
            l = a.num_regions() - 1 - l;
        const RegionLabelMap same(9, 7, permuted);
        CHECK(variation_of_information(a, same) == 0.0);
        CHECK(rand_index(a, same) == 1.0);
    }
}

TEST_CASE("segmentation covering analytic cases") {
    const RegionLabelMap halves = row({0, 0, 1, 1});
    const RegionLabelMap whole = row({0, 0, 0, 0});
    CHECK(segmentation_covering(halves, halves) == 1.0);
    CHECK(segmentation_covering(whole, halves) == 0.5);
    CHECK(segmentation_covering(halves, whole) == 0.5);
    const CoveringScores both = segmentation_covering_both(whole, row({0, 1, 1, 1}));
    CHECK(both.s2_covers_s1 == doctest::Approx(0.75));
    CHECK(both.s1_covers_s2 == doctest::Approx((1 * 0.25 + 3 * 0.75) / 4));
    CHECK(both.symmetric == doctest::Approx((both.s1_covers_s2 + both.s2_covers_s1) / 2));
}

TEST_CASE("segmentation covering matches a per-region Jaccard scan") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto a = synth::random_region_map(20, 20, 10, seed);
        const auto b = synth::random_region_map(20, 20, 10, seed + 100);
        CHECK(segmentation_covering(a, b) == doctest::Approx(covering_scan(a, b)).epsilon(1e-12));
        CHECK(segmentation_covering(b, a) == doctest::Approx(covering_scan(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("contingency table sums") {
    const auto a = synth::random_labels(13, 11, 5, 1);
    const auto b = synth::random_labels(13, 11, 7, 2);
    const Contingency c = contingency(a, b);
    CHECK(c.total == 143);
    const auto sa = a.region_sizes(), sb = b.region_sizes();
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        std::uint64_t sum = 0;
        for (std::size_t j = 0; j < c.cols.size(); ++j)
            sum += c.at(i, j);
        CHECK(sum == sa[i]);
        CHECK(c.rows[i] == sa[i]);
    }
    for (std::size_t j = 0; j < c.cols.size(); ++j)
        CHECK(c.cols[j] == sb[j]);
}

TEST_CASE("vanishing point success rate") {
    const std::vector<Point2> truths{{0, 0}, {0, 0}, {0, 0}};
    const std::vector<Point2> dets{{5, 0}, {0, 12}, {30, 0}};
    CHECK(vp_success_rate(dets, truths, 10) == doctest::Approx(1.0 / 3.0));
    CHECK(vp_success_rate(dets, truths, 0) == 0.0);
    CHECK(vp_success_rate(dets, truths, std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(vp_success_rate(dets, truths, 12) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(vp_success_rate(dets, std::span(truths).first(2), 10), InvalidInput);

    std::vector<double> ts;
    for (int t = 0; t <= 40; ++t)
        ts.push_back(t);
    const auto curve = vp_success_curve(dets, truths, ts);
    REQUIRE(curve.size() == ts.size());
    for (std::size_t i = 1; i < curve.size(); ++i)
        CHECK(curve[i].second >= curve[i - 1].second);
}

TEST_CASE("triangle match analytic cases") {
    const Triangle2 t{{0, 0}, {100, 0}, {0, 100}};
    CHECK(triangle_match(t, t));
    CHECK(vertex_displacement_ratio(t, t) == 0.0);

    // equilateral, perimeter 300, each vertex moved 3 px
    const Triangle2 eq{{0, 0}, {100, 0}, {50, 50 * std::sqrt(3.0)}};
    CHECK(eq.perimeter() == doctest::Approx(300.0));
    const Triangle2 near = shifted(eq, {3, 0}, {0, 3}, {-3, 0});
    CHECK(vertex_displacement_ratio(eq, near) == doctest::Approx(0.03));
    CHECK(triangle_match(eq, near));
    const Triangle2 far = shifted(eq, {40, 0}, {0, 40}, {-40, 0});
    CHECK(vertex_displacement_ratio(eq, far) == doctest::Approx(0.4));
    CHECK_FALSE(triangle_match(eq, far));

    // vertex order does not matter
    const Triangle2 rotated{near.c, near.a, near.b}, mirrored{near.b, near.a, near.c};
    CHECK(vertex_displacement_ratio(eq, rotated) == doctest::Approx(0.03));
    CHECK(vertex_displacement_ratio(eq, mirrored) == doctest::Approx(0.03));

    CHECK_THROWS_AS(triangle_match({{0, 0}, {1, 1}, {2, 2}}, t), InvalidInput);
}

TEST_CASE("precision and recall") {
    std::vector<Triangle2> g;
    for (int i = 0; i < 4; ++i)
        g.push_back({{100.0 * i, 0}, {100.0 * i + 50, 0}, {100.0 * i, 50}});
    const PrecisionRecall same = precision_recall(g, g);
    CHECK(same.precision == 1.0);
    CHECK(same.recall == 1.0);

    const std::vector<Triangle2> two{g[1], g[3]};
    const PrecisionRecall half = precision_recall(g, two);
    CHECK(half.precision == 1.0);
    CHECK(half.recall == 0.5);

    const std::vector<Triangle2> gt{g[0], g[1]};
    const std::vector<Triangle2> q{g[0], g[0], g[2], g[3]};
    const PrecisionRecall pr = precision_recall(gt, q);
    CHECK(pr.precision == 0.25);
    CHECK(pr.recall == 0.5);
    CHECK(pr.matches == 1);

    CHECK(precision_recall(gt, {}).precision == 0.0);
    CHECK(precision_recall({}, q).recall == 0.0);
}

} // TEST_SUITE
