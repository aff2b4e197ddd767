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
#include <optional>
#include <string>
#include <vector>

#include "compose/core/geometry.hpp"
#include "compose/core/image.hpp"
#include "compose/core/label_map.hpp"
#include "compose/lines/line_segments.hpp"
#include "compose/segmentation/config.hpp"
#include "compose/triangles/triangles.hpp"
#include "compose/vp/vanishing_point.hpp"

namespace compose {

enum class IndexMode { Scene, Portrait };

std::string_view to_string(IndexMode mode);
IndexMode parse_index_mode(std::string_view text);

/// Every knob the per-image analysis depends on.
struct AnalysisParams {
    SegmentationConfig segmentation;
    VpSearchConfig vp;
    LsdConfig lsd;
    RansacConfig ransac;

    void validate() const;
    bool operator==(const AnalysisParams&) const;
};

struct AnalysisRecord {
    std::string image_id;
    std::string content_hash; // SHA-256 of the source file, hex
    int width = 0;            // canonical analysis size
    int height = 0;
    std::optional<Point2> vp;
    std::optional<RegionLabelMap> seg;
    std::vector<TriangleCandidate> triangles;
    int segments_count = 0;

    bool operator==(const AnalysisRecord&) const = default;
};

struct CompositionIndex {
    static constexpr int kFormatVersion = 1;

    IndexMode mode = IndexMode::Scene;
    int version = kFormatVersion;
    AnalysisParams params;
    std::string images_dir; // source directory as given at build time
    std::vector<AnalysisRecord> records; // sorted by image_id

    const AnalysisRecord* find(std::string_view image_id) const;
};

struct RetrievalConfig {
    double alpha = 0.5;
    int topk = 8;

    void validate() const;
};

/// Vanishing point plus geometric segmentation of a canonical-size image.
AnalysisRecord analyze_scene(const ImageBuffer& canonical, const AnalysisParams& params);

/// Line segments and triangle candidates of a canonical-size image.
AnalysisRecord analyze_portrait(const ImageBuffer& canonical, const AnalysisParams& params);

/// (1 - RI) of the segmentations on a common 250x165 grid plus alpha times
/// the vanishing-point displacement in a 500x330 frame over its diagonal.
double scene_distance(const AnalysisRecord& a, const AnalysisRecord& b, double alpha);

struct SceneMatch {
    std::string image_id;
    double distance = 0.0;
};

struct SketchMatch {
    std::string image_id;
    TriangleCandidate triangle;
};

/// Ranks index records by scene_distance to `query`, ascending; ties by id.
std::vector<SceneMatch> rank_scene(const AnalysisRecord& query, const CompositionIndex& index,
                                   const RetrievalConfig& cfg);

/// Analyzes the image with the index parameters, then ranks.
std::vector<SceneMatch> query_scene(const ImageBuffer& image, const CompositionIndex& index,
                                    const RetrievalConfig& cfg);

/// Best matching triangle per record, ranked by continuity ratio.
std::vector<SketchMatch> query_sketch(const SketchQuery& query, const CompositionIndex& index,
                                      const RetrievalConfig& cfg);

std::string sha256_file(const std::filesystem::path& path);

/// Analyzes every image in `images_dir` and persists the index to
/// `index_dir`. Records whose file hash and parameters are unchanged are
/// reused from an existing index. Unreadable images are skipped with a warning.
CompositionIndex build_index(const std::filesystem::path& images_dir, IndexMode mode, const AnalysisParams& params,
                             const std::filesystem::path& index_dir);

void save_index(const CompositionIndex& index, const std::filesystem::path& index_dir);
CompositionIndex load_index(const std::filesystem::path& index_dir);

} // namespace compose
