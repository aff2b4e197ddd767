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

// JSON mappings shared by the index store and the command-line tool.

#include <json.hpp>

#include "compose/lines/line_segments.hpp"
#include "compose/retrieval/index.hpp"
#include "compose/segmentation/config.hpp"
#include "compose/triangles/triangles.hpp"
#include "compose/vp/vanishing_point.hpp"

namespace compose {

using nlohmann::json;

inline void to_json(json& j, const Point2& p) { j = json{{"x", p.x}, {"y", p.y}}; }
inline void from_json(const json& j, Point2& p) {
    p.x = j.at("x").get<double>();
    p.y = j.at("y").get<double>();
}

inline void to_json(json& j, Opening o) { j = std::string(to_string(o)); }
inline void from_json(const json& j, Opening& o) { o = parse_opening(j.get<std::string>()); }

inline void to_json(json& j, const TriangleCandidate& t) {
    j = json{{"apex", t.apex},  {"v1", t.vertex_x},          {"v2", t.vertex_y},
             {"cr", t.continuity_ratio}, {"tr", t.total_ratio}, {"opening", t.opening}};
}
inline void from_json(const json& j, TriangleCandidate& t) {
    t.apex = j.at("apex").get<Point2>();
    t.vertex_x = j.at("v1").get<Point2>();
    t.vertex_y = j.at("v2").get<Point2>();
    t.continuity_ratio = j.at("cr").get<double>();
    t.total_ratio = j.at("tr").get<double>();
    t.opening = j.at("opening").get<Opening>();
}

inline void to_json(json& j, const LineSegment& s) {
    j = json{{"p0", s.p0}, {"p1", s.p1}, {"confidence", s.confidence}};
}

inline void to_json(json& j, const SegmentationConfig& c) {
    j = json{{"lambda", c.lambda},
             {"stop_delta", c.stop_delta},
             {"target_regions", c.target_regions ? json(*c.target_regions) : json(nullptr)},
             {"overseg_min_size", c.overseg_min_size},
             {"overseg_scale", c.overseg_scale}};
}
inline void from_json(const json& j, SegmentationConfig& c) {
    c.lambda = j.at("lambda").get<double>();
    c.stop_delta = j.at("stop_delta").get<double>();
    const auto& k = j.at("target_regions");
    c.target_regions = k.is_null() ? std::nullopt : std::optional<int>(k.get<int>());
    c.overseg_min_size = j.at("overseg_min_size").get<int>();
    c.overseg_scale = j.at("overseg_scale").get<double>();
}

inline void to_json(json& j, const VpSearchConfig& c) {
    j = json{{"grid_cols", c.grid_cols}, {"grid_rows", c.grid_rows}, {"coarse_to_fine", c.coarse_to_fine}};
}
inline void from_json(const json& j, VpSearchConfig& c) {
    c.grid_cols = j.at("grid_cols").get<int>();
    c.grid_rows = j.at("grid_rows").get<int>();
    c.coarse_to_fine = j.at("coarse_to_fine").get<bool>();
}

inline void to_json(json& j, const LsdConfig& c) {
    j = json{{"angle_tolerance", c.angle_tolerance},
             {"density_threshold", c.density_threshold},
             {"magnitude_threshold", c.magnitude_threshold},
             {"nfa_epsilon", c.nfa_epsilon},
             {"alpha", c.alpha}};
}
inline void from_json(const json& j, LsdConfig& c) {
    c.angle_tolerance = j.at("angle_tolerance").get<double>();
    c.density_threshold = j.at("density_threshold").get<double>();
    c.magnitude_threshold = j.at("magnitude_threshold").get<double>();
    c.nfa_epsilon = j.at("nfa_epsilon").get<double>();
    c.alpha = j.at("alpha").get<double>();
}

inline void to_json(json& j, const RansacConfig& c) {
    j = json{{"iterations", c.iterations},
             {"d_nb", c.d_nb},
             {"min_cr", c.min_cr},
             {"min_tr", c.min_tr},
             {"min_pair_angle", c.min_pair_angle},
             {"rng_seed", c.rng_seed},
             {"min_segment_length", c.min_segment_length},
             {"nms_delta", c.nms_delta}};
}
inline void from_json(const json& j, RansacConfig& c) {
    c.iterations = j.at("iterations").get<int>();
    c.d_nb = j.at("d_nb").get<double>();
    c.min_cr = j.at("min_cr").get<double>();
    c.min_tr = j.at("min_tr").get<double>();
    c.min_pair_angle = j.at("min_pair_angle").get<double>();
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    c.min_segment_length = j.at("min_segment_length").get<double>();
    c.nms_delta = j.at("nms_delta").get<double>();
}

inline void to_json(json& j, const AnalysisParams& p) {
    j = json{{"segmentation", p.segmentation}, {"vp", p.vp}, {"lsd", p.lsd}, {"ransac", p.ransac}};
}
inline void from_json(const json& j, AnalysisParams& p) {
    p.segmentation = j.at("segmentation").get<SegmentationConfig>();
    p.vp = j.at("vp").get<VpSearchConfig>();
    p.lsd = j.at("lsd").get<LsdConfig>();
    p.ransac = j.at("ransac").get<RansacConfig>();
}

} // namespace compose
