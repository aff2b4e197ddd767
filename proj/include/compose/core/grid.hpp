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

#include <cstddef>
#include <vector>

#include "compose/core/errors.hpp"

namespace compose {

/// Dense row-major 2D array.
template <class T>
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<T> data;

    Grid() = default;
    Grid(int w, int h, T fill = T{}) : width(w), height(h), data(std::size_t(w) * std::size_t(h), fill) {
        require(w >= 0 && h >= 0, "grid dimensions must be non-negative");
    }

    std::size_t size() const { return data.size(); }
    std::size_t index(int x, int y) const { return std::size_t(y) * std::size_t(width) + std::size_t(x); }
    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }

    T& operator()(int x, int y) { return data[index(x, y)]; }
    const T& operator()(int x, int y) const { return data[index(x, y)]; }
    T& operator[](std::size_t i) { return data[i]; }
    const T& operator[](std::size_t i) const { return data[i]; }

    bool operator==(const Grid&) const = default;
};

} // namespace compose
