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

#include "compose/segmentation/polar_histogram.hpp"

#include <algorithm>

#include "compose/core/errors.hpp"

namespace compose {

PolarAngleHistogram& PolarAngleHistogram::operator+=(const PolarAngleHistogram& other) {
    for (std::size_t b = 0; b < counts.size(); ++b)
        counts[b] += other.counts[b];
    total += other.total;
    return *this;
}

PolarAngleHistogram build_histogram(std::span<const PixelCoord> pixels, Point2 pole) {
    PolarAngleHistogram hist;
    for (const auto& p : pixels) {
        const double dx = p.x - pole.x;
        const double dy = p.y - pole.y;
        if (dx == 0.0 && dy == 0.0)
            continue;
        hist.add(angle_bin(polar_angle_of(dx, dy)));
    }
    if (hist.total == 0)
        throw InvalidInput("build_histogram: region has no pixels besides the pole");
    return hist;
}

double geometric_weight(std::span<const std::uint32_t> ci, std::span<const std::uint32_t> cj) {
    std::uint64_t ti = 0, tj = 0, overlap = 0;
    for (auto c : ci)
        ti += c;
    for (auto c : cj)
        tj += c;
    if (ti == 0 || tj == 0)
        throw InvalidInput("geometric_weight: empty histogram");
    const std::size_t common = std::min(ci.size(), cj.size());
    for (std::size_t b = 0; b < common; ++b)
        overlap += std::min(ci[b], cj[b]);
    // max(overlap/ti, overlap/tj) is attained at the smaller total
    return 1.0 - double(overlap) / double(std::min(ti, tj));
}

double geometric_weight(const PolarAngleHistogram& hi, const PolarAngleHistogram& hj) {
    return geometric_weight(std::span<const std::uint32_t>(hi.counts), std::span<const std::uint32_t>(hj.counts));
}

} // namespace compose
