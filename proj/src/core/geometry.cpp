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

#include "compose/core/geometry.hpp"

#include "compose/core/errors.hpp"

namespace compose {

double polar_angle(Point2 pole, Point2 x) {
    require(pole.finite() && x.finite(), "polar_angle: non-finite coordinates");
    const double dx = x.x - pole.x;
    const double dy = x.y - pole.y;
    if (dx == 0.0 && dy == 0.0)
        throw InvalidInput("polar_angle: angle undefined at the pole");
    return polar_angle_of(dx, dy);
}

} // namespace compose
