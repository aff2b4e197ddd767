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

#include "compose/segmentation/overseg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <opencv2/imgproc.hpp>

namespace compose {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    // Returns the new root.
    std::uint32_t join(std::uint32_t a, std::uint32_t b) {
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return a;
    }
    std::uint32_t size(std::uint32_t root) const { return size_[root]; }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

struct GraphEdge {
    float w;
    std::uint32_t a;
    std::uint32_t b;
};

} // namespace

RegionLabelMap overseg_initial(const ImageBuffer& image, const SegmentationConfig& cfg) {
    cfg.validate();
    const int w = image.width();
    const int h = image.height();

    cv::Mat src(h, w, CV_8UC3, const_cast<std::uint8_t*>(image.pixels().data()));
    cv::Mat smooth;
    src.convertTo(smooth, CV_32FC3);
    cv::GaussianBlur(smooth, smooth, cv::Size(0, 0), 0.8, 0.8, cv::BORDER_REPLICATE);

    auto diff = [&](int x1, int y1, int x2, int y2) {
        const auto& p = smooth.at<cv::Vec3f>(y1, x1);
        const auto& q = smooth.at<cv::Vec3f>(y2, x2);
        const float dr = p[0] - q[0], dg = p[1] - q[1], db = p[2] - q[2];
        return std::sqrt(dr * dr + dg * dg + db * db);
    };

    std::vector<GraphEdge> edges;
    edges.reserve(std::size_t(w) * std::size_t(h) * 4);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::uint32_t p = std::uint32_t(y * w + x);
            if (x + 1 < w)
                edges.push_back({diff(x, y, x + 1, y), p, p + 1});
            if (y + 1 < h)
                edges.push_back({diff(x, y, x, y + 1), p, std::uint32_t(p + w)});
            if (x + 1 < w && y + 1 < h)
                edges.push_back({diff(x, y, x + 1, y + 1), p, std::uint32_t(p + w + 1)});
            if (x + 1 < w && y > 0)
                edges.push_back({diff(x, y, x + 1, y - 1), p, std::uint32_t(p - w + 1)});
        }
    }
    std::stable_sort(edges.begin(), edges.end(), [](const GraphEdge& l, const GraphEdge& r) { return l.w < r.w; });

    const std::size_t n = std::size_t(w) * std::size_t(h);
    const float k = float(cfg.overseg_scale);
    DisjointSets sets(n);
    std::vector<float> threshold(n, k);
    for (const auto& e : edges) {
        std::uint32_t a = sets.find(e.a);
        std::uint32_t b = sets.find(e.b);
        if (a != b && e.w <= threshold[a] && e.w <= threshold[b]) {
            const std::uint32_t root = sets.join(a, b);
            threshold[root] = e.w + k / float(sets.size(root));
        }
    }
    const std::uint32_t min_size = std::uint32_t(cfg.overseg_min_size);
    for (const auto& e : edges) {
        std::uint32_t a = sets.find(e.a);
        std::uint32_t b = sets.find(e.b);
        if (a != b && (sets.size(a) < min_size || sets.size(b) < min_size))
            sets.join(a, b);
    }

    std::vector<std::int32_t> raw(n);
    for (std::size_t i = 0; i < n; ++i)
        raw[i] = std::int32_t(sets.find(std::uint32_t(i)));
    return RegionLabelMap::relabeled(w, h, raw);
}

} // namespace compose
