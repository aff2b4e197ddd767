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

#include "compose/vp/vanishing_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "compose/core/errors.hpp"
#include "compose/core/parallel.hpp"
#include "compose/segmentation/overseg.hpp"
#include "compose/segmentation/polar_histogram.hpp"
#include "compose/segmentation/region_graph.hpp"

namespace compose {

namespace {

constexpr std::uint16_t kPoleBin = 0xFFFF;
constexpr int kBins = PolarAngleHistogram::kBins;

} // namespace

void VpSearchConfig::validate() const {
    require(grid_cols >= 2 && grid_rows >= 2, "vanishing point grid must be at least 2x2");
}

Point2 grid_vertex(int width, int height, int cols, int rows, int col, int row) {
    return {(col + 0.5) * double(width) / cols, (row + 0.5) * double(height) / rows};
}

ConsensusScorer::ConsensusScorer(const RegionLabelMap& overseg, const BoundaryStrengthMap& strengths)
    : width_(overseg.width()),
      height_(overseg.height()),
      regions_(std::size_t(overseg.num_regions())),
      labels_(overseg.labels().begin(), overseg.labels().end()) {
    require(strengths.width == width_ && strengths.height == height_, "boundary map size does not match");
    for (const auto& adj : region_adjacency(overseg)) {
        edges_.push_back({adj.i, adj.j});
        wp_.push_back(photometric_weight(adj.boundary, strengths));
    }
    const int lw = 2 * width_ - 1;
    const int lh = 2 * height_ - 1;
    bin_lut_.resize(std::size_t(lw) * std::size_t(lh));
    for (int dy = -(height_ - 1); dy <= height_ - 1; ++dy) {
        for (int dx = -(width_ - 1); dx <= width_ - 1; ++dx) {
            const std::size_t idx = std::size_t(dy + height_ - 1) * std::size_t(lw) + std::size_t(dx + width_ - 1);
            bin_lut_[idx] = (dx == 0 && dy == 0) ? kPoleBin : std::uint16_t(angle_bin(polar_angle_of(dx, dy)));
        }
    }
}

double ConsensusScorer::score(Point2 pole) const {
    if (edges_.empty())
        return 0.0;
    std::vector<std::uint32_t> counts(regions_ * kBins, 0);
    std::vector<std::uint64_t> totals(regions_, 0);
    const bool integral = pole.x == std::floor(pole.x) && pole.y == std::floor(pole.y) && pole.x >= 0.0 &&
                          pole.y >= 0.0 && pole.x < width_ && pole.y < height_;
    if (integral) {
        const int px = int(pole.x);
        const int py = int(pole.y);
        const std::size_t lw = std::size_t(2 * width_ - 1);
        for (int y = 0; y < height_; ++y) {
            const std::uint16_t* row = bin_lut_.data() + std::size_t(y - py + height_ - 1) * lw + std::size_t(width_ - 1 - px);
            const std::int32_t* lab = labels_.data() + std::size_t(y) * std::size_t(width_);
            for (int x = 0; x < width_; ++x) {
                const std::uint16_t b = row[x];
                if (b == kPoleBin)
                    continue;
                ++counts[std::size_t(lab[x]) * kBins + b];
                ++totals[std::size_t(lab[x])];
            }
        }
    } else {
        for (int y = 0; y < height_; ++y) {
            for (int x = 0; x < width_; ++x) {
                const double dx = x - pole.x;
                const double dy = y - pole.y;
                if (dx == 0.0 && dy == 0.0)
                    continue;
                const std::size_t r = std::size_t(labels_[std::size_t(y) * std::size_t(width_) + std::size_t(x)]);
                ++counts[r * kBins + std::size_t(angle_bin(polar_angle_of(dx, dy)))];
                ++totals[r];
            }
        }
    }
    double sum = 0.0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (wp_[e] == 0.0)
            continue;
        const std::size_t i = std::size_t(edges_[e].i);
        const std::size_t j = std::size_t(edges_[e].j);
        if (totals[i] == 0 || totals[j] == 0)
            continue;
        const std::uint32_t* ci = counts.data() + i * kBins;
        const std::uint32_t* cj = counts.data() + j * kBins;
        std::uint64_t overlap = 0;
        for (int b = 0; b < kBins; ++b)
            overlap += std::min(ci[b], cj[b]);
        const double wg = 1.0 - double(overlap) / double(std::min(totals[i], totals[j]));
        sum += wp_[e] * wg;
    }
    return sum;
}

double consensus_score(const RegionLabelMap& overseg, const BoundaryStrengthMap& strengths, Point2 pole) {
    return ConsensusScorer(overseg, strengths).score(pole);
}

namespace {

void evaluate(const ConsensusScorer& scorer, int width, int height, int cols, int rows,
              const std::vector<std::size_t>& cells, std::vector<double>& scores) {
    parallel_for(cells.size(), [&](std::size_t k) {
        const std::size_t cell = cells[k];
        const int col = int(cell % std::size_t(cols));
        const int row = int(cell / std::size_t(cols));
        scores[cell] = scorer.score(grid_vertex(width, height, cols, rows, col, row));
    });
}

} // namespace

VpScoreMap search_vp(const ConsensusScorer& scorer, int width, int height, const VpSearchConfig& cfg) {
    cfg.validate();
    VpScoreMap map;
    map.cols = cfg.grid_cols;
    map.rows = cfg.grid_rows;
    const std::size_t n = std::size_t(map.cols) * std::size_t(map.rows);
    map.scores.assign(n, std::numeric_limits<double>::quiet_NaN());

    std::vector<std::size_t> cells;
    if (!cfg.coarse_to_fine) {
        cells.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            cells[i] = i;
    } else {
        constexpr int kCoarseCols = 10;
        constexpr int kCoarseRows = 7;
        std::vector<std::size_t> coarse_cells(kCoarseCols * kCoarseRows);
        for (std::size_t i = 0; i < coarse_cells.size(); ++i)
            coarse_cells[i] = i;
        std::vector<double> coarse(coarse_cells.size(), 0.0);
        evaluate(scorer, width, height, kCoarseCols, kCoarseRows, coarse_cells, coarse);
        const std::size_t best = std::size_t(std::max_element(coarse.begin(), coarse.end()) - coarse.begin());
        const int bc = int(best % kCoarseCols);
        const int br = int(best / kCoarseCols);
        // fine vertices whose positions fall inside the 3x3 coarse neighborhood
        const double x0 = double(std::max(bc - 1, 0)) * width / kCoarseCols;
        const double x1 = double(std::min(bc + 2, kCoarseCols)) * width / kCoarseCols;
        const double y0 = double(std::max(br - 1, 0)) * height / kCoarseRows;
        const double y1 = double(std::min(br + 2, kCoarseRows)) * height / kCoarseRows;
        for (int r = 0; r < map.rows; ++r) {
            for (int c = 0; c < map.cols; ++c) {
                const Point2 v = grid_vertex(width, height, map.cols, map.rows, c, r);
                if (v.x >= x0 && v.x < x1 && v.y >= y0 && v.y < y1)
                    cells.push_back(std::size_t(r) * std::size_t(map.cols) + std::size_t(c));
            }
        }
    }
    evaluate(scorer, width, height, map.cols, map.rows, cells, map.scores);

    bool found = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = map.scores[i];
        if (std::isnan(s))
            continue;
        if (!found || s > map.best_score) {
            found = true;
            map.best_score = s;
            map.best_col = int(i % std::size_t(map.cols));
            map.best_row = int(i / std::size_t(map.cols));
        }
    }
    map.best = grid_vertex(width, height, map.cols, map.rows, map.best_col, map.best_row);
    return map;
}

VpScoreMap detect_dominant_vp(const ImageBuffer& image, const VpSearchConfig& cfg, const SegmentationConfig& seg) {
    cfg.validate();
    const RegionLabelMap overseg = overseg_initial(image, seg);
    const BoundaryStrengthMap strengths = boundary_strength(image);
    const ConsensusScorer scorer(overseg, strengths);
    return search_vp(scorer, image.width(), image.height(), cfg);
}

} // namespace compose
