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

#include "compose/segmentation/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "compose/core/errors.hpp"

namespace compose {

BoundaryStrengthMap boundary_strength(const ImageBuffer& image) {
    const int w = image.width();
    const int h = image.height();
    const auto px = image.pixels();

    // luma, and two chroma differences
    std::array<cv::Mat, 3> planes;
    for (auto& p : planes)
        p.create(h, w, CV_32F);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t o = (std::size_t(y) * std::size_t(w) + std::size_t(x)) * 3;
            const float r = px[o], g = px[o + 1], b = px[o + 2];
            const float luma = 0.299f * r + 0.587f * g + 0.114f * b;
            planes[0].at<float>(y, x) = luma;
            planes[1].at<float>(y, x) = b - luma;
            planes[2].at<float>(y, x) = r - luma;
        }
    }
    cv::Mat mag = cv::Mat::zeros(h, w, CV_32F);
    for (auto& p : planes) {
        cv::GaussianBlur(p, p, cv::Size(0, 0), 1.0, 1.0, cv::BORDER_REPLICATE);
        cv::Mat gx, gy;
        cv::Sobel(p, gx, CV_32F, 1, 0, 1, 0.5, 0, cv::BORDER_REPLICATE);
        cv::Sobel(p, gy, CV_32F, 0, 1, 1, 0.5, 0, cv::BORDER_REPLICATE);
        mag += gx.mul(gx) + gy.mul(gy);
    }
    cv::sqrt(mag, mag);

    BoundaryStrengthMap out(w, h, 0.0f);
    std::vector<float> values(mag.begin<float>(), mag.end<float>());
    const float peak = values.empty() ? 0.0f : *std::max_element(values.begin(), values.end());
    if (peak <= 1e-6f)
        return out;
    std::vector<float> sorted = values;
    const std::size_t rank = std::min(sorted.size() - 1, std::size_t(std::floor(0.99 * double(sorted.size() - 1))));
    std::nth_element(sorted.begin(), sorted.begin() + std::ptrdiff_t(rank), sorted.end());
    float norm = sorted[rank];
    // Sparse edge maps (fewer than 1% boundary pixels) have a zero percentile.
    if (norm < 1e-3f * peak)
        norm = peak;
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = std::clamp(values[i] / norm, 0.0f, 1.0f);
    return out;
}

ContourMap load_contour_map(const std::filesystem::path& path) {
    cv::Mat img = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    if (img.empty())
        throw InvalidInput("cannot read contour map: " + path.string());
    ContourMap out(img.cols, img.rows);
    for (int y = 0; y < img.rows; ++y)
        for (int x = 0; x < img.cols; ++x)
            out(x, y) = float(img.at<std::uint8_t>(y, x)) / 255.0f;
    return out;
}

void save_contour_map(const ContourMap& map, const std::filesystem::path& path) {
    cv::Mat img(map.height, map.width, CV_8UC1);
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x)
            img.at<std::uint8_t>(y, x) = std::uint8_t(std::lround(std::clamp(map(x, y), 0.0f, 1.0f) * 255.0f));
    if (!cv::imwrite(path.string(), img))
        throw std::runtime_error("cannot write contour map: " + path.string());
}

} // namespace compose
