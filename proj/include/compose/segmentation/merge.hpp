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
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <variant>
#include <vector>

#include "compose/core/label_map.hpp"
#include "compose/segmentation/config.hpp"
#include "compose/segmentation/region_graph.hpp"

namespace compose {

struct MergeStep {
    double weight;
    std::int32_t survivor;
    std::int32_t absorbed;
    bool operator==(const MergeStep&) const = default;
};

struct MergeHierarchy {
    RegionLabelMap initial;
    std::vector<MergeStep> merges;
};

/// Greedy region merging over a weighted region graph. Each step merges the
/// globally cheapest edge (ties: smallest (i, j)); the smaller ID survives.
/// Histograms of merged regions are summed, parallel edges are fused with
/// their boundaries concatenated, and every edge touching the merged region
/// is reweighted.
class RegionMerger {
public:
    struct Edge {
        std::int32_t i;
        std::int32_t j;
        std::vector<BoundaryPair> boundary;
        double wp;
        double wg;
        double w;
    };

    RegionMerger(RegionGraph graph, const BoundaryStrengthMap& strengths);

    /// Performs one merge; false when no edge is left.
    bool step();

    std::optional<double> min_weight() const;
    std::size_t region_count() const { return alive_count_; }
    const std::vector<MergeStep>& steps() const { return steps_; }

    bool alive(std::int32_t id) const { return regions_[std::size_t(id)].alive; }
    const PolarAngleHistogram& histogram(std::int32_t id) const { return regions_[std::size_t(id)].histogram; }
    /// Live edges sorted by (i, j).
    std::vector<Edge> edges() const;

private:
    struct Region {
        bool alive = true;
        std::uint64_t pixel_count = 0;
        PolarAngleHistogram histogram;
        std::map<std::int32_t, std::size_t> neighbors; // neighbor ID -> edge slot
    };
    using Key = std::tuple<double, std::int32_t, std::int32_t>;

    Key key(std::size_t e) const { return {edges_[e].w, edges_[e].i, edges_[e].j}; }
    void reweight(std::size_t e, bool boundary_changed);

    const BoundaryStrengthMap* strengths_;
    double lambda_;
    std::vector<Region> regions_;
    std::vector<Edge> edges_;
    std::vector<char> edge_alive_;
    std::set<Key> queue_;
    std::size_t alive_count_ = 0;
    std::vector<MergeStep> steps_;
};

/// Runs the merge loop until the region count reaches cfg.target_regions or
/// the cheapest edge weighs more than cfg.stop_delta.
MergeHierarchy merge_hierarchy(const RegionGraph& graph, const RegionLabelMap& initial,
                               const BoundaryStrengthMap& strengths, const SegmentationConfig& cfg);

struct RegionCount {
    int k;
};
struct WeightThreshold {
    double delta;
};
using StopRule = std::variant<RegionCount, WeightThreshold>;

/// Replays the recorded merges until the stop rule fires and renumbers the
/// result in scan order.
RegionLabelMap segment_at(const MergeHierarchy& hierarchy, const StopRule& stop);

/// Label map after applying the first `count` merges.
RegionLabelMap apply_merges(const MergeHierarchy& hierarchy, std::size_t count);

} // namespace compose
