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

#include <array>
#include <cstdint>
#include <span>

#include "compose/core/geometry.hpp"

namespace compose {

/// 360 one-degree bins of pixel polar angles around a pole.
struct PolarAngleHistogram {
    static constexpr int kBins = 360;

    std::array<std::uint32_t, kBins> counts{};
    std::uint64_t total = 0;

    void add(int bin) {
        ++counts[std::size_t(bin)];
        ++total;
    }
    PolarAngleHistogram& operator+=(const PolarAngleHistogram& other);
    bool operator==(const PolarAngleHistogram&) const = default;
};

/// Bin b covers [b, b+1) degrees.
inline int angle_bin(double degrees) {
    const int b = int(degrees);
    return b >= PolarAngleHistogram::kBins ? PolarAngleHistogram::kBins - 1 : b;
}

/// Histogram of polar angles of the given pixels; a pixel equal to the pole is
/// skipped. Throws InvalidInput if nothing remains.
PolarAngleHistogram build_histogram(std::span<const PixelCoord> pixels, Point2 pole);

/// 1 - max(overlap/|Ri|, overlap/|Rj|) with overlap = sum of bin-wise minima.
/// Histograms of different length are compared as if zero-padded.
double geometric_weight(std::span<const std::uint32_t> ci, std::span<const std::uint32_t> cj);
double geometric_weight(const PolarAngleHistogram& hi, const PolarAngleHistogram& hj);

} // namespace compose
