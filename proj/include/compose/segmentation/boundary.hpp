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

#include <filesystem>

#include "compose/core/grid.hpp"
#include "compose/core/image.hpp"

namespace compose {

/// Per-pixel boundary strength in [0, 1].
using BoundaryStrengthMap = Grid<float>;
/// Per-pixel contour confidence in [0, 1], as produced by an external contour detector.
using ContourMap = Grid<float>;

/// Gradient magnitude of the smoothed (sigma 1) luma + chroma channels,
/// divided by its 99th percentile and clamped to [0, 1].
BoundaryStrengthMap boundary_strength(const ImageBuffer& image);

/// Grayscale PNG import; 0..255 maps linearly onto [0, 1].
ContourMap load_contour_map(const std::filesystem::path& path);
void save_contour_map(const ContourMap& map, const std::filesystem::path& path);

} // namespace compose
