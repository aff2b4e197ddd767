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

#include "compose/core/image.hpp"

#include <cmath>
#include <string>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "compose/core/errors.hpp"

namespace compose {

namespace {

void check_dims(int width, int height) {
    require(width >= ImageBuffer::kMinSide && height >= ImageBuffer::kMinSide,
            "image must be at least 8x8, got " + std::to_string(width) + "x" + std::to_string(height));
}

cv::Mat as_mat(const ImageBuffer& image) {
    // OpenCV only reads through this header; constness is restored by the callers.
    return cv::Mat(image.height(), image.width(), CV_8UC3, const_cast<std::uint8_t*>(image.pixels().data()));
}

ImageBuffer from_mat(const cv::Mat& rgb) {
    CV_Assert(rgb.type() == CV_8UC3);
    cv::Mat cont = rgb.isContinuous() ? rgb : rgb.clone();
    std::vector<std::uint8_t> data(cont.data, cont.data + cont.total() * 3);
    return ImageBuffer(cont.cols, cont.rows, std::move(data));
}

} // namespace

ImageBuffer::ImageBuffer(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(std::size_t(width) * std::size_t(height) * kChannels, fill);
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> rgb)
    : width_(width), height_(height), pixels_(std::move(rgb)) {
    check_dims(width, height);
    require(pixels_.size() == std::size_t(width) * std::size_t(height) * kChannels,
            "pixel buffer size does not match width*height*3");
}

void ImageBuffer::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const std::size_t o = offset(x, y);
    pixels_[o] = r;
    pixels_[o + 1] = g;
    pixels_[o + 2] = b;
}

ImageBuffer load_image(const std::filesystem::path& path) {
    cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    if (bgr.empty())
        throw InvalidInput("cannot read image: " + path.string());
    cv::Mat rgb;
    cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
    return from_mat(rgb);
}

void save_image(const ImageBuffer& image, const std::filesystem::path& path) {
    cv::Mat bgr;
    cv::cvtColor(as_mat(image), bgr, cv::COLOR_RGB2BGR);
    if (!cv::imwrite(path.string(), bgr))
        throw std::runtime_error("cannot write image: " + path.string());
}

ImageBuffer resize_bilinear(const ImageBuffer& image, int width, int height) {
    require(width >= 1 && height >= 1, "resize target must be at least 1x1");
    if (width == image.width() && height == image.height())
        return image;
    cv::Mat out;
    cv::resize(as_mat(image), out, cv::Size(width, height), 0, 0, cv::INTER_LINEAR);
    return from_mat(out);
}

ImageBuffer resize_canonical(const ImageBuffer& image) {
    check_dims(image.width(), image.height());
    constexpr int kLongSide = 500;
    const bool landscape = image.width() >= image.height();
    const int long_side = landscape ? image.width() : image.height();
    const int short_side = landscape ? image.height() : image.width();
    // beyond about 62:1 the short side is held at the minimum image size
    const int scaled_short =
        std::max(ImageBuffer::kMinSide, int(std::lround(double(short_side) * kLongSide / long_side)));
    return landscape ? resize_bilinear(image, kLongSide, scaled_short)
                     : resize_bilinear(image, scaled_short, kLongSide);
}

Grid<float> luminance(const ImageBuffer& image) {
    Grid<float> gray(image.width(), image.height());
    const auto px = image.pixels();
    for (std::size_t i = 0; i < gray.size(); ++i)
        gray[i] = 0.299f * px[3 * i] + 0.587f * px[3 * i + 1] + 0.114f * px[3 * i + 2];
    return gray;
}

} // namespace compose
