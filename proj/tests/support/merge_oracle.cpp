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

#include "merge_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "compose/segmentation/polar_histogram.hpp"
#include "compose/segmentation/region_graph.hpp"
#include "synth.hpp"

namespace compose::test {

namespace {

struct Partition {
    std::vector<std::int32_t> owner;

    explicit Partition(int n) : owner(std::size_t(n)) { std::iota(owner.begin(), owner.end(), 0); }
    std::int32_t find(std::int32_t x) const {
        while (owner[std::size_t(x)] != x)
            x = owner[std::size_t(x)];
        return x;
    }
    void merge(std::int32_t survivor, std::int32_t absorbed) { owner[std::size_t(find(absorbed))] = find(survivor); }
};

using PairKey = std::pair<std::int32_t, std::int32_t>;

// Boundary pairs of the current partition, grouped by region pair and sorted.
std::map<PairKey, std::vector<BoundaryPair>> current_boundaries(const std::vector<AdjacencyEdge>& initial,
                                                               const Partition& part) {
    std::map<PairKey, std::vector<BoundaryPair>> out;
    for (const auto& e : initial) {
        std::int32_t a = part.find(e.i), b = part.find(e.j);
        if (a == b)
            continue;
        if (a > b)
            std::swap(a, b);
        auto& list = out[{a, b}];
        list.insert(list.end(), e.boundary.begin(), e.boundary.end());
    }
    for (auto& [key, list] : out)
        std::sort(list.begin(), list.end());
    return out;
}

} // namespace

ConsistencyReport check_merge_consistency(std::uint64_t seed, double lambda) {
    constexpr int kW = 40, kH = 30, kRegions = 20;
    const RegionLabelMap map = synth::random_region_map(kW, kH, kRegions, seed);
    std::mt19937_64 rng(seed * 7919 + 1);
    std::uniform_real_distribution<float> unit(0.0f, 1.0f);
    BoundaryStrengthMap strengths(kW, kH);
    for (auto& v : strengths.data)
        v = unit(rng);
    const Point2 pole{unit(rng) * kW, unit(rng) * kH};

    const auto initial_edges = region_adjacency(map);
    const auto pixels = region_pixels(map);
    RegionMerger merger(build_region_graph(map, strengths, pole, lambda), strengths);
    Partition part(map.num_regions());

    ConsistencyReport report;
    auto fail = [&](const std::string& what) {
        if (report.mismatches++ == 0)
            report.detail = "after merge " + std::to_string(report.merges) + ": " + what;
    };
    while (merger.step()) {
        const MergeStep& s = merger.steps().back();
        part.merge(s.survivor, s.absorbed);
        ++report.merges;

        std::map<std::int32_t, std::vector<PixelCoord>> members;
        for (std::int32_t r = 0; r < map.num_regions(); ++r) {
            auto& m = members[part.find(r)];
            m.insert(m.end(), pixels[std::size_t(r)].begin(), pixels[std::size_t(r)].end());
        }
        std::map<std::int32_t, PolarAngleHistogram> hists;
        for (const auto& [id, px] : members) {
            hists[id] = build_histogram(px, pole);
            if (!merger.alive(id))
                fail("region " + std::to_string(id) + " should be alive");
            else if (!(merger.histogram(id) == hists[id]))
                fail("histogram of region " + std::to_string(id));
        }

        const auto expected = current_boundaries(initial_edges, part);
        const auto edges = merger.edges();
        if (edges.size() != expected.size()) {
            fail("edge count " + std::to_string(edges.size()) + " vs " + std::to_string(expected.size()));
            continue;
        }
        std::size_t k = 0;
        for (const auto& [key, boundary] : expected) {
            const auto& e = edges[k++];
            const double wp = photometric_weight(boundary, strengths);
            const double wg = region_geometric_weight(hists[key.first], hists[key.second]);
            const double w = combined_weight(wg, wp, lambda);
            if (e.i != key.first || e.j != key.second || e.boundary != boundary) {
                fail("edge identity or boundary of (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                     ")");
            } else if (e.wp != wp || e.wg != wg || e.w != w) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "weights of (" << key.first << "," << key.second << "): " << e.wp << "/" << e.wg << "/"
                    << e.w << " vs " << wp << "/" << wg << "/" << w;
                fail(msg.str());
            }
        }
    }
    return report;
}

std::vector<MergeStep> photometric_merge_oracle(const RegionLabelMap& map, const BoundaryStrengthMap& strengths) {
    const auto initial_edges = region_adjacency(map);
    Partition part(map.num_regions());
    std::vector<MergeStep> steps;
    while (true) {
        const auto boundaries = current_boundaries(initial_edges, part);
        if (boundaries.empty())
            break;
        std::tuple<double, std::int32_t, std::int32_t> best{2.0, 0, 0};
        for (const auto& [key, boundary] : boundaries)
            best = std::min(best, {photometric_weight(boundary, strengths), key.first, key.second});
        const auto [w, a, b] = best;
        steps.push_back({w, a, b});
        part.merge(a, b);
    }
    return steps;
}

} // namespace compose::test
