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
#include <vector>

#include "compose/core/geometry.hpp"
#include "compose/core/image.hpp"
#include "compose/core/label_map.hpp"
#include "compose/segmentation/boundary.hpp"
#include "compose/segmentation/config.hpp"

namespace compose {

struct VpSearchConfig {
    int grid_cols = 50;
    int grid_rows = 33;
    bool coarse_to_fine = false;

    void validate() const;
};

/// Consensus scores on the search grid. Scores are row-major (rows x cols);
/// vertices skipped by the coarse-to-fine search hold NaN.
struct VpScoreMap {
    int cols = 0;
    int rows = 0;
    std::vector<double> scores;
    Point2 best;
    double best_score = 0.0;
    int best_col = 0;
    int best_row = 0;

    double at(int col, int row) const { return scores[std::size_t(row) * std::size_t(cols) + std::size_t(col)]; }
};

/// Grid vertex (col, row) sits at the center of its cell in a cols x rows
/// partition of the frame.
Point2 grid_vertex(int width, int height, int cols, int rows, int col, int row);

/// Evaluates f(P) = sum over adjacency edges of W_p * W_g(P) on a fixed
/// over-segmentation. W_p is computed once; histograms are rebuilt per pole.
class ConsensusScorer {
public:
    ConsensusScorer(const RegionLabelMap& overseg, const BoundaryStrengthMap& strengths);

    double score(Point2 pole) const;

    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<double>& photometric_weights() const { return wp_; }

private:
    struct Edge {
        std::int32_t i;
        std::int32_t j;
    };

    int width_;
    int height_;
    std::size_t regions_;
    std::vector<std::int32_t> labels_;
    std::vector<Edge> edges_;
    std::vector<double> wp_;
    // polar bin for every displacement (dx, dy); 0xFFFF marks the pole itself
    std::vector<std::uint16_t> bin_lut_;
};

double consensus_score(const RegionLabelMap& overseg, const BoundaryStrengthMap& strengths, Point2 pole);

/// Grid search over the frame for the pole with the highest consensus score.
/// Ties go to the first vertex in row-major order.
VpScoreMap detect_dominant_vp(const ImageBuffer& image, const VpSearchConfig& cfg,
                              const SegmentationConfig& seg = {});

/// Same search on precomputed inputs.
VpScoreMap search_vp(const ConsensusScorer& scorer, int width, int height, const VpSearchConfig& cfg);

} // namespace compose
