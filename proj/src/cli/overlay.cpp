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

#include "compose/cli/overlay.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/imgproc.hpp>

#include "compose/core/errors.hpp"

namespace compose {

namespace {

cv::Mat wrap(ImageBuffer& img) { return cv::Mat(img.height(), img.width(), CV_8UC3, img.pixels().data()); }

cv::Point to_cv(Point2 p) { return {int(std::lround(p.x)), int(std::lround(p.y))}; }

} // namespace

ImageBuffer draw_overlay(const ImageBuffer& image, const OverlayContent& content) {
    ImageBuffer out = image;
    if (content.regions) {
        const RegionLabelMap& labels = *content.regions;
        require(labels.width() == image.width() && labels.height() == image.height(),
                "label map size does not match the image");
        std::vector<std::array<std::uint64_t, 3>> sums(std::size_t(labels.num_regions()), {0, 0, 0});
        const auto sizes = labels.region_sizes();
        for (int y = 0; y < image.height(); ++y)
            for (int x = 0; x < image.width(); ++x)
                for (int c = 0; c < 3; ++c)
                    sums[std::size_t(labels.at(x, y))][std::size_t(c)] += image.at(x, y, c);
        for (int y = 0; y < image.height(); ++y) {
            for (int x = 0; x < image.width(); ++x) {
                const auto r = std::size_t(labels.at(x, y));
                for (int c = 0; c < 3; ++c)
                    out.at(x, y, c) = std::uint8_t((sums[r][std::size_t(c)] + sizes[r] / 2) / sizes[r]);
            }
        }
    }
    cv::Mat canvas = wrap(out);
    // Canvas channels are RGB.
    for (const auto& s : content.segments)
        cv::line(canvas, to_cv(s.p0), to_cv(s.p1), cv::Scalar(0, 255, 0), 1, cv::LINE_8);
    for (const auto& t : content.triangles) {
        cv::line(canvas, to_cv(t.apex), to_cv(t.vertex_x), cv::Scalar(255, 0, 0), 2, cv::LINE_8);
        cv::line(canvas, to_cv(t.apex), to_cv(t.vertex_y), cv::Scalar(255, 0, 0), 2, cv::LINE_8);
    }
    if (content.vp)
        cv::circle(canvas, to_cv(*content.vp), 3, cv::Scalar(255, 255, 0), cv::FILLED, cv::LINE_8);
    return out;
}

ImageBuffer render_heatmap(const VpScoreMap& map, int width, int height) {
    require(map.cols > 0 && map.rows > 0, "empty score map");
    double lo = INFINITY, hi = -INFINITY;
    for (double s : map.scores) {
        if (std::isnan(s))
            continue;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    cv::Mat levels(map.rows, map.cols, CV_8UC1, cv::Scalar(0));
    cv::Mat skipped(map.rows, map.cols, CV_8UC1, cv::Scalar(0));
    for (int r = 0; r < map.rows; ++r) {
        for (int c = 0; c < map.cols; ++c) {
            const double s = map.at(c, r);
            if (std::isnan(s)) {
                skipped.at<std::uint8_t>(r, c) = 255;
                continue;
            }
            const double t = hi > lo ? (s - lo) / (hi - lo) : 0.0;
            levels.at<std::uint8_t>(r, c) = std::uint8_t(std::lround(255.0 * t));
        }
    }
    cv::Mat colored;
    cv::applyColorMap(levels, colored, cv::COLORMAP_JET);
    colored.setTo(cv::Scalar(0, 0, 0), skipped);
    cv::Mat big;
    cv::resize(colored, big, cv::Size(width, height), 0, 0, cv::INTER_NEAREST);
    cv::cvtColor(big, big, cv::COLOR_BGR2RGB);
    return ImageBuffer(width, height, std::vector<std::uint8_t>(big.data, big.data + big.total() * 3));
}

ImageBuffer contact_sheet(std::span<const ImageBuffer> images, int columns, int thumb_width) {
    require(columns >= 1 && thumb_width >= ImageBuffer::kMinSide, "invalid contact sheet layout");
    if (images.empty())
        return ImageBuffer(thumb_width, thumb_width, 255);
    std::vector<ImageBuffer> thumbs;
    int cell_h = ImageBuffer::kMinSide;
    for (const auto& img : images) {
        const int h = std::max(ImageBuffer::kMinSide, int(std::lround(double(img.height()) * thumb_width / img.width())));
        thumbs.push_back(resize_bilinear(img, thumb_width, h));
        cell_h = std::max(cell_h, h);
    }
    const int pad = 4;
    const int cols = std::min<int>(columns, int(thumbs.size()));
    const int rows = (int(thumbs.size()) + cols - 1) / cols;
    ImageBuffer sheet(cols * (thumb_width + pad) + pad, rows * (cell_h + pad) + pad, 255);
    for (std::size_t i = 0; i < thumbs.size(); ++i) {
        const int x0 = pad + int(i % std::size_t(cols)) * (thumb_width + pad);
        const int y0 = pad + int(i / std::size_t(cols)) * (cell_h + pad);
        const ImageBuffer& t = thumbs[i];
        for (int y = 0; y < t.height(); ++y)
            for (int x = 0; x < t.width(); ++x)
                for (int c = 0; c < 3; ++c)
                    sheet.at(x0 + x, y0 + y, c) = t.at(x, y, c);
    }
    return sheet;
}

} // namespace compose
