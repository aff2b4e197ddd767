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

#include "compose/core/grid.hpp"

namespace compose {

/// 8-bit RGB image, row-major, interleaved. Dimensions are at least 8x8.
class ImageBuffer {
public:
    static constexpr int kChannels = 3;
    static constexpr int kMinSide = 8;

    ImageBuffer() = default;
    ImageBuffer(int width, int height, std::uint8_t fill = 0);
    ImageBuffer(int width, int height, std::vector<std::uint8_t> rgb);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return pixels_.empty(); }
    std::size_t pixel_count() const { return std::size_t(width_) * std::size_t(height_); }

    std::span<const std::uint8_t> pixels() const { return pixels_; }
    std::span<std::uint8_t> pixels() { return pixels_; }

    std::uint8_t at(int x, int y, int c) const { return pixels_[offset(x, y) + std::size_t(c)]; }
    std::uint8_t& at(int x, int y, int c) { return pixels_[offset(x, y) + std::size_t(c)]; }
    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);

    bool operator==(const ImageBuffer&) const = default;

private:
    std::size_t offset(int x, int y) const {
        return (std::size_t(y) * std::size_t(width_) + std::size_t(x)) * kChannels;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

ImageBuffer load_image(const std::filesystem::path& path);
void save_image(const ImageBuffer& image, const std::filesystem::path& path);

ImageBuffer resize_bilinear(const ImageBuffer& image, int width, int height);

/// Rescales so the long side is 500 px, keeping the aspect ratio.
ImageBuffer resize_canonical(const ImageBuffer& image);

/// Rec.601 luma on the 0-255 scale.
Grid<float> luminance(const ImageBuffer& image);

} // namespace compose
