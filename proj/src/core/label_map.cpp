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

#include "compose/core/label_map.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include <opencv2/imgcodecs.hpp>

#include "compose/core/errors.hpp"

namespace compose {

RegionLabelMap::RegionLabelMap(int width, int height, std::vector<std::int32_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
    require(width > 0 && height > 0, "label map dimensions must be positive");
    require(labels_.size() == std::size_t(width) * std::size_t(height), "label count does not match dimensions");
    std::int32_t max_label = -1;
    for (auto l : labels_) {
        require(l >= 0, "negative region label");
        max_label = std::max(max_label, l);
    }
    std::vector<char> seen(std::size_t(max_label) + 1, 0);
    for (auto l : labels_)
        seen[std::size_t(l)] = 1;
    require(std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; }),
            "region labels must form a contiguous range 0..K-1");
    num_regions_ = max_label + 1;
}

RegionLabelMap RegionLabelMap::relabeled(int width, int height, std::span<const std::int32_t> raw) {
    std::unordered_map<std::int32_t, std::int32_t> remap;
    std::vector<std::int32_t> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = remap.try_emplace(raw[i], std::int32_t(remap.size()));
        out[i] = it->second;
    }
    return RegionLabelMap(width, height, std::move(out));
}

std::vector<std::uint64_t> RegionLabelMap::region_sizes() const {
    std::vector<std::uint64_t> sizes(std::size_t(num_regions_), 0);
    for (auto l : labels_)
        ++sizes[std::size_t(l)];
    return sizes;
}

std::vector<AdjacencyEdge> region_adjacency(const RegionLabelMap& labels) {
    const int w = labels.width();
    const int h = labels.height();
    std::unordered_map<std::uint64_t, std::size_t> lookup;
    std::vector<AdjacencyEdge> edges;
    auto visit = [&](std::int32_t p, std::int32_t q) {
        std::int32_t a = labels[std::size_t(p)];
        std::int32_t b = labels[std::size_t(q)];
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        const std::uint64_t key = (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
        auto [it, inserted] = lookup.try_emplace(key, edges.size());
        if (inserted)
            edges.push_back({a, b, {}});
        edges[it->second].boundary.push_back({p, q});
    };
    // Pixel p is visited before any q > p, and (p, p+1) precedes (p, p+w),
    // so every boundary list comes out sorted.
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int32_t p = y * w + x;
            if (x + 1 < w)
                visit(p, p + 1);
            if (y + 1 < h)
                visit(p, p + w);
        }
    }
    std::sort(edges.begin(), edges.end(),
              [](const AdjacencyEdge& l, const AdjacencyEdge& r) { return std::tie(l.i, l.j) < std::tie(r.i, r.j); });
    return edges;
}

RegionLabelMap resample_nearest(const RegionLabelMap& labels, int width, int height) {
    require(width > 0 && height > 0, "resample target must be positive");
    if (width == labels.width() && height == labels.height())
        return labels;
    std::vector<std::int32_t> out(std::size_t(width) * std::size_t(height));
    for (int y = 0; y < height; ++y) {
        const int sy = std::min(labels.height() - 1, int((y + 0.5) * labels.height() / height));
        for (int x = 0; x < width; ++x) {
            const int sx = std::min(labels.width() - 1, int((x + 0.5) * labels.width() / width));
            out[std::size_t(y) * std::size_t(width) + std::size_t(x)] = labels.at(sx, sy);
        }
    }
    return RegionLabelMap::relabeled(width, height, out);
}

void save_label_map(const RegionLabelMap& labels, const std::filesystem::path& path) {
    require(labels.num_regions() <= 65536, "label map has too many regions for a 16-bit PNG");
    cv::Mat img(labels.height(), labels.width(), CV_16UC1);
    for (int y = 0; y < labels.height(); ++y)
        for (int x = 0; x < labels.width(); ++x)
            img.at<std::uint16_t>(y, x) = std::uint16_t(labels.at(x, y));
    if (!cv::imwrite(path.string(), img))
        throw std::runtime_error("cannot write label map: " + path.string());
}

RegionLabelMap load_label_map(const std::filesystem::path& path) {
    cv::Mat img = cv::imread(path.string(), cv::IMREAD_ANYDEPTH | cv::IMREAD_GRAYSCALE);
    if (img.empty())
        throw InvalidInput("cannot read label map: " + path.string());
    if (img.depth() != CV_16U)
        img.convertTo(img, CV_16U);
    std::vector<std::int32_t> raw(img.total());
    for (int y = 0; y < img.rows; ++y)
        for (int x = 0; x < img.cols; ++x)
            raw[std::size_t(y) * std::size_t(img.cols) + std::size_t(x)] = img.at<std::uint16_t>(y, x);
    // Maps written by this library are already contiguous; external ones may not be.
    try {
        return RegionLabelMap(img.cols, img.rows, raw);
    } catch (const InvalidInput&) {
        return RegionLabelMap::relabeled(img.cols, img.rows, raw);
    }
}

} // namespace compose
