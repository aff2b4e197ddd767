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
#include <filesystem>
#include <span>
#include <vector>

namespace compose {

/// Per-pixel region IDs forming the contiguous range 0..K-1.
class RegionLabelMap {
public:
    RegionLabelMap() = default;
    /// Validates that the labels are exactly 0..K-1 with every ID present.
    RegionLabelMap(int width, int height, std::vector<std::int32_t> labels);

    /// Accepts arbitrary non-negative IDs and renumbers them by first
    /// occurrence in scan order.
    static RegionLabelMap relabeled(int width, int height, std::span<const std::int32_t> raw);

    int width() const { return width_; }
    int height() const { return height_; }
    int num_regions() const { return num_regions_; }
    std::size_t size() const { return labels_.size(); }

    std::int32_t at(int x, int y) const { return labels_[std::size_t(y) * std::size_t(width_) + std::size_t(x)]; }
    std::int32_t operator[](std::size_t i) const { return labels_[i]; }
    std::span<const std::int32_t> labels() const { return labels_; }

    std::vector<std::uint64_t> region_sizes() const;

    bool operator==(const RegionLabelMap&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    int num_regions_ = 0;
    std::vector<std::int32_t> labels_;
};

/// A 4-adjacent pixel pair straddling a region boundary, as linear pixel
/// indices with first < second.
struct BoundaryPair {
    std::int32_t first;
    std::int32_t second;
    bool operator==(const BoundaryPair&) const = default;
    auto operator<=>(const BoundaryPair&) const = default;
};

/// Edge of the region adjacency graph (i < j). Boundary pairs are sorted.
struct AdjacencyEdge {
    std::int32_t i;
    std::int32_t j;
    std::vector<BoundaryPair> boundary;
};

/// Edges between 4-adjacent regions, sorted by (i, j).
std::vector<AdjacencyEdge> region_adjacency(const RegionLabelMap& labels);

RegionLabelMap resample_nearest(const RegionLabelMap& labels, int width, int height);

/// 16-bit grayscale PNG, gray value = region ID.
void save_label_map(const RegionLabelMap& labels, const std::filesystem::path& path);
RegionLabelMap load_label_map(const std::filesystem::path& path);

} // namespace compose
