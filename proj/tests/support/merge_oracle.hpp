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
#include <string>
#include <vector>

#include "compose/core/label_map.hpp"
#include "compose/segmentation/boundary.hpp"
#include "compose/segmentation/merge.hpp"

namespace compose::test {

struct ConsistencyReport {
    std::size_t merges = 0;
    std::size_t mismatches = 0;
    std::string detail; // first mismatch, if any
};

/// Merges a random 20-region toy map to a single region and, after every
/// merge, compares stored histograms and edge weights with values rebuilt
/// from the current pixel sets. Comparisons are exact.
ConsistencyReport check_merge_consistency(std::uint64_t seed, double lambda);

/// Greedy merge sequence recomputing W_p from scratch at every step.
std::vector<MergeStep> photometric_merge_oracle(const RegionLabelMap& map, const BoundaryStrengthMap& strengths);

} // namespace compose::test
