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
#include <utility>
#include <vector>

#include "compose/core/geometry.hpp"
#include "compose/core/label_map.hpp"

namespace compose {

/// Overlap counts between two partitions of the same pixel grid.
struct Contingency {
    std::vector<std::uint64_t> rows;  // region sizes in the first partition
    std::vector<std::uint64_t> cols;  // region sizes in the second partition
    std::vector<std::uint64_t> table; // rows.size() x cols.size(), row-major
    std::uint64_t total = 0;

    std::uint64_t at(std::size_t i, std::size_t j) const { return table[i * cols.size() + j]; }
};

Contingency contingency(const RegionLabelMap& s1, const RegionLabelMap& s2);

double rand_index(const RegionLabelMap& s1, const RegionLabelMap& s2);

/// H(S1|S2) + H(S2|S1) in bits.
double variation_of_information(const RegionLabelMap& s1, const RegionLabelMap& s2);

/// Covering of `covered` by `cover`: size-weighted best Jaccard overlap.
double segmentation_covering(const RegionLabelMap& covered, const RegionLabelMap& cover);

struct CoveringScores {
    double s2_covers_s1 = 0.0;
    double s1_covers_s2 = 0.0;
    double symmetric = 0.0; // mean of the two directions
};

CoveringScores segmentation_covering_both(const RegionLabelMap& s1, const RegionLabelMap& s2);

/// Fraction of detections strictly closer than t to their ground truth.
double vp_success_rate(std::span<const Point2> detections, std::span<const Point2> truths, double t);

/// Success rate at each threshold in `thresholds`.
std::vector<std::pair<double, double>> vp_success_curve(std::span<const Point2> detections,
                                                        std::span<const Point2> truths,
                                                        std::span<const double> thresholds);

/// True when the best-correspondence displacement ratio is at most delta.
bool triangle_match(const Triangle2& gt, const Triangle2& cand, double delta = 0.3);

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    std::size_t matches = 0;
};

/// Greedy one-to-one matching in candidate order (callers pass candidates
/// sorted by descending continuity ratio).
PrecisionRecall precision_recall(std::span<const Triangle2> truths, std::span<const Triangle2> candidates,
                                 double delta = 0.3);

} // namespace compose
