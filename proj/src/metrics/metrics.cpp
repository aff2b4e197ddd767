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

#include "compose/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "compose/core/errors.hpp"

namespace compose {

namespace {

double pairs(std::uint64_t n) { return 0.5 * double(n) * double(n > 0 ? n - 1 : 0); }

} // namespace

Contingency contingency(const RegionLabelMap& s1, const RegionLabelMap& s2) {
    require(s1.width() == s2.width() && s1.height() == s2.height(), "partitions must cover the same grid");
    require(s1.size() > 0, "partitions must not be empty");
    Contingency c;
    c.rows.assign(std::size_t(s1.num_regions()), 0);
    c.cols.assign(std::size_t(s2.num_regions()), 0);
    c.table.assign(c.rows.size() * c.cols.size(), 0);
    for (std::size_t p = 0; p < s1.size(); ++p) {
        const auto i = std::size_t(s1[p]);
        const auto j = std::size_t(s2[p]);
        ++c.rows[i];
        ++c.cols[j];
        ++c.table[i * c.cols.size() + j];
    }
    c.total = s1.size();
    return c;
}

double rand_index(const RegionLabelMap& s1, const RegionLabelMap& s2) {
    const Contingency c = contingency(s1, s2);
    if (c.total < 2)
        return 1.0;
    // Same-same pairs plus different-different pairs, from the marginals.
    double both = 0.0, a = 0.0, b = 0.0;
    for (auto v : c.table)
        both += pairs(v);
    for (auto v : c.rows)
        a += pairs(v);
    for (auto v : c.cols)
        b += pairs(v);
    const double total = pairs(c.total);
    return (total + 2.0 * both - a - b) / total;
}

double variation_of_information(const RegionLabelMap& s1, const RegionLabelMap& s2) {
    const Contingency c = contingency(s1, s2);
    const double n = double(c.total);
    double voi = 0.0;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        for (std::size_t j = 0; j < c.cols.size(); ++j) {
            const auto nij = c.at(i, j);
            if (nij == 0)
                continue;
            const double v = double(nij);
            voi += v / n * (std::log2(double(c.rows[i]) / v) + std::log2(double(c.cols[j]) / v));
        }
    }
    return voi;
}

double segmentation_covering(const RegionLabelMap& covered, const RegionLabelMap& cover) {
    const Contingency c = contingency(covered, cover);
    double sum = 0.0;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        double best = 0.0;
        for (std::size_t j = 0; j < c.cols.size(); ++j) {
            const auto inter = c.at(i, j);
            if (inter == 0)
                continue;
            best = std::max(best, double(inter) / double(c.rows[i] + c.cols[j] - inter));
        }
        sum += double(c.rows[i]) * best;
    }
    return sum / double(c.total);
}

CoveringScores segmentation_covering_both(const RegionLabelMap& s1, const RegionLabelMap& s2) {
    CoveringScores s;
    s.s2_covers_s1 = segmentation_covering(s1, s2);
    s.s1_covers_s2 = segmentation_covering(s2, s1);
    s.symmetric = 0.5 * (s.s2_covers_s1 + s.s1_covers_s2);
    return s;
}

double vp_success_rate(std::span<const Point2> detections, std::span<const Point2> truths, double t) {
    require(detections.size() == truths.size(), "detections and ground truth differ in length");
    if (detections.empty())
        return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < detections.size(); ++i)
        if (distance(detections[i], truths[i]) < t)
            ++hits;
    return double(hits) / double(detections.size());
}

std::vector<std::pair<double, double>> vp_success_curve(std::span<const Point2> detections,
                                                        std::span<const Point2> truths,
                                                        std::span<const double> thresholds) {
    std::vector<std::pair<double, double>> curve;
    for (double t : thresholds)
        curve.emplace_back(t, vp_success_rate(detections, truths, t));
    return curve;
}

bool triangle_match(const Triangle2& gt, const Triangle2& cand, double delta) {
    require(!gt.degenerate(), "ground-truth triangle is degenerate");
    require(delta > 0.0, "delta must be positive");
    return vertex_displacement_ratio(gt, cand) <= delta;
}

PrecisionRecall precision_recall(std::span<const Triangle2> truths, std::span<const Triangle2> candidates,
                                 double delta) {
    PrecisionRecall pr;
    std::vector<bool> used(truths.size(), false);
    for (const auto& q : candidates) {
        for (std::size_t g = 0; g < truths.size(); ++g) {
            if (!used[g] && triangle_match(truths[g], q, delta)) {
                used[g] = true;
                ++pr.matches;
                break;
            }
        }
    }
    pr.precision = candidates.empty() ? 0.0 : double(pr.matches) / double(candidates.size());
    pr.recall = truths.empty() ? 0.0 : double(pr.matches) / double(truths.size());
    return pr;
}

} // namespace compose
