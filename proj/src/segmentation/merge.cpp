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

#include "compose/segmentation/merge.hpp"

#include <algorithm>
#include <numeric>

#include "compose/core/errors.hpp"

namespace compose {

RegionMerger::RegionMerger(RegionGraph graph, const BoundaryStrengthMap& strengths)
    : strengths_(&strengths), lambda_(graph.lambda) {
    regions_.resize(graph.regions.size());
    for (auto& node : graph.regions) {
        auto& r = regions_[std::size_t(node.id)];
        r.pixel_count = node.pixel_count;
        r.histogram = node.histogram;
    }
    alive_count_ = regions_.size();
    edges_.reserve(graph.edges.size());
    for (auto& e : graph.edges) {
        const std::size_t slot = edges_.size();
        edges_.push_back({e.i, e.j, std::move(e.boundary), e.wp, e.wg, e.w});
        regions_[std::size_t(e.i)].neighbors[e.j] = slot;
        regions_[std::size_t(e.j)].neighbors[e.i] = slot;
        queue_.insert(key(slot));
    }
    edge_alive_.assign(edges_.size(), 1);
}

std::optional<double> RegionMerger::min_weight() const {
    if (queue_.empty())
        return std::nullopt;
    return std::get<0>(*queue_.begin());
}

void RegionMerger::reweight(std::size_t e, bool boundary_changed) {
    auto& edge = edges_[e];
    if (boundary_changed)
        edge.wp = photometric_weight(edge.boundary, *strengths_);
    edge.wg = region_geometric_weight(regions_[std::size_t(edge.i)].histogram, regions_[std::size_t(edge.j)].histogram);
    edge.w = combined_weight(edge.wg, edge.wp, lambda_);
}

bool RegionMerger::step() {
    if (queue_.empty())
        return false;
    const auto [weight, a, b] = *queue_.begin();
    queue_.erase(queue_.begin());

    auto& survivor = regions_[std::size_t(a)];
    auto& absorbed = regions_[std::size_t(b)];
    const std::size_t merged_edge = survivor.neighbors.at(b);
    edge_alive_[merged_edge] = 0;
    survivor.neighbors.erase(b);
    absorbed.neighbors.erase(a);

    survivor.histogram += absorbed.histogram;
    survivor.pixel_count += absorbed.pixel_count;

    std::vector<std::size_t> fused;
    for (const auto& [n, slot] : absorbed.neighbors) {
        queue_.erase(key(slot));
        auto& neighbor = regions_[std::size_t(n)];
        neighbor.neighbors.erase(b);
        if (auto it = survivor.neighbors.find(n); it != survivor.neighbors.end()) {
            auto& keep = edges_[it->second];
            auto& drop = edges_[slot];
            std::vector<BoundaryPair> merged;
            merged.reserve(keep.boundary.size() + drop.boundary.size());
            std::merge(keep.boundary.begin(), keep.boundary.end(), drop.boundary.begin(), drop.boundary.end(),
                       std::back_inserter(merged));
            keep.boundary = std::move(merged);
            drop.boundary = {};
            edge_alive_[slot] = 0;
            fused.push_back(it->second);
        } else {
            auto& edge = edges_[slot];
            edge.i = std::min(a, n);
            edge.j = std::max(a, n);
            survivor.neighbors[n] = slot;
            neighbor.neighbors[a] = slot;
        }
    }
    absorbed.neighbors.clear();
    absorbed.alive = false;
    absorbed.histogram = {};
    absorbed.pixel_count = 0;
    --alive_count_;

    for (const auto& [n, slot] : survivor.neighbors) {
        queue_.erase(key(slot));
        reweight(slot, std::find(fused.begin(), fused.end(), slot) != fused.end());
        queue_.insert(key(slot));
    }
    steps_.push_back({weight, a, b});
    return true;
}

std::vector<RegionMerger::Edge> RegionMerger::edges() const {
    std::vector<Edge> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (edge_alive_[e])
            out.push_back(edges_[e]);
    std::sort(out.begin(), out.end(), [](const Edge& l, const Edge& r) { return std::tie(l.i, l.j) < std::tie(r.i, r.j); });
    return out;
}

MergeHierarchy merge_hierarchy(const RegionGraph& graph, const RegionLabelMap& initial,
                               const BoundaryStrengthMap& strengths, const SegmentationConfig& cfg) {
    cfg.validate();
    require(initial.num_regions() == int(graph.regions.size()), "label map does not match the region graph");
    RegionMerger merger(graph, strengths);
    while (true) {
        if (cfg.target_regions && merger.region_count() <= std::size_t(*cfg.target_regions))
            break;
        const auto w = merger.min_weight();
        if (!w || *w > cfg.stop_delta)
            break;
        merger.step();
    }
    return {initial, merger.steps()};
}

RegionLabelMap apply_merges(const MergeHierarchy& hierarchy, std::size_t count) {
    const auto& initial = hierarchy.initial;
    count = std::min(count, hierarchy.merges.size());
    std::vector<std::int32_t> owner(std::size_t(initial.num_regions()));
    std::iota(owner.begin(), owner.end(), 0);
    auto find = [&](std::int32_t x) {
        while (owner[std::size_t(x)] != x)
            x = owner[std::size_t(x)] = owner[std::size_t(owner[std::size_t(x)])];
        return x;
    };
    for (std::size_t m = 0; m < count; ++m) {
        const auto& step = hierarchy.merges[m];
        owner[std::size_t(find(step.absorbed))] = find(step.survivor);
    }
    std::vector<std::int32_t> raw(initial.size());
    for (std::size_t p = 0; p < raw.size(); ++p)
        raw[p] = find(initial[p]);
    return RegionLabelMap::relabeled(initial.width(), initial.height(), raw);
}

RegionLabelMap segment_at(const MergeHierarchy& hierarchy, const StopRule& stop) {
    std::size_t count = 0;
    if (const auto* k = std::get_if<RegionCount>(&stop)) {
        require(k->k >= 1, "segment_at: region count must be at least 1");
        const std::size_t initial = std::size_t(hierarchy.initial.num_regions());
        count = initial > std::size_t(k->k) ? initial - std::size_t(k->k) : 0;
    } else {
        const double delta = std::get<WeightThreshold>(stop).delta;
        while (count < hierarchy.merges.size() && hierarchy.merges[count].weight <= delta)
            ++count;
    }
    return apply_merges(hierarchy, count);
}

} // namespace compose
