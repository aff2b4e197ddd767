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

#include "compose/retrieval/index.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "../io/json_io.hpp"
#include "compose/core/errors.hpp"
#include "compose/core/parallel.hpp"
#include "compose/metrics/metrics.hpp"
#include "compose/segmentation/segmentation.hpp"

namespace compose {

namespace fs = std::filesystem;

namespace {

constexpr int kCommonLabelWidth = 250;
constexpr int kCommonLabelHeight = 165;
constexpr double kFrameWidth = 500.0;
constexpr double kFrameHeight = 330.0;

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    static const std::set<std::string> known = {".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff", ".webp"};
    return known.contains(ext);
}

void write_text(const fs::path& path, const std::string& text) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << text;
    }
    fs::rename(tmp, path);
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
    }
}

// Exclusive advisory lock on the index directory, released on destruction.
class DirectoryLock {
public:
    explicit DirectoryLock(const fs::path& dir) {
        const fs::path path = dir / ".lock";
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd_ < 0)
            throw std::runtime_error("cannot open lock file " + path.string());
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            throw InvalidInput("index directory " + dir.string() + " is locked by another writer");
        }
    }
    ~DirectoryLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

private:
    int fd_ = -1;
};

json record_json(const AnalysisRecord& r) {
    json j;
    j["image_id"] = r.image_id;
    j["content_hash"] = r.content_hash;
    j["width"] = r.width;
    j["height"] = r.height;
    j["vp"] = r.vp ? json(*r.vp) : json(nullptr);
    j["seg"] = r.seg ? json("labels/" + r.image_id + ".png") : json(nullptr);
    j["triangles"] = r.triangles;
    j["segments_count"] = r.segments_count;
    return j;
}

AnalysisRecord record_from_json(const json& j, const fs::path& index_dir) {
    AnalysisRecord r;
    r.image_id = j.at("image_id").get<std::string>();
    r.content_hash = j.at("content_hash").get<std::string>();
    r.width = j.at("width").get<int>();
    r.height = j.at("height").get<int>();
    if (!j.at("vp").is_null())
        r.vp = j.at("vp").get<Point2>();
    if (!j.at("seg").is_null())
        r.seg = load_label_map(index_dir / j.at("seg").get<std::string>());
    r.triangles = j.at("triangles").get<std::vector<TriangleCandidate>>();
    r.segments_count = j.at("segments_count").get<int>();
    return r;
}

Point2 to_common_frame(Point2 p, int width, int height) {
    return {p.x * kFrameWidth / width, p.y * kFrameHeight / height};
}

} // namespace

std::string_view to_string(IndexMode mode) { return mode == IndexMode::Scene ? "scene" : "portrait"; }

IndexMode parse_index_mode(std::string_view text) {
    if (text == "scene")
        return IndexMode::Scene;
    if (text == "portrait")
        return IndexMode::Portrait;
    throw InvalidInput("unknown index mode '" + std::string(text) + "' (expected scene or portrait)");
}

void AnalysisParams::validate() const {
    segmentation.validate();
    vp.validate();
    lsd.validate();
    ransac.validate();
}

bool AnalysisParams::operator==(const AnalysisParams& other) const { return json(*this) == json(other); }

const AnalysisRecord* CompositionIndex::find(std::string_view image_id) const {
    auto it = std::lower_bound(records.begin(), records.end(), image_id,
                               [](const AnalysisRecord& r, std::string_view id) { return r.image_id < id; });
    return it != records.end() && it->image_id == image_id ? &*it : nullptr;
}

void RetrievalConfig::validate() const {
    require(alpha >= 0.0, "retrieval alpha must be non-negative");
    require(topk >= 1, "topk must be at least 1");
}

AnalysisRecord analyze_scene(const ImageBuffer& canonical, const AnalysisParams& params) {
    params.validate();
    AnalysisRecord r;
    r.width = canonical.width();
    r.height = canonical.height();
    const VpScoreMap vp = detect_dominant_vp(canonical, params.vp, params.segmentation);
    r.vp = vp.best;
    r.seg = segment_image(canonical, vp.best, params.segmentation).labels;
    return r;
}

AnalysisRecord analyze_portrait(const ImageBuffer& canonical, const AnalysisParams& params) {
    params.validate();
    AnalysisRecord r;
    r.width = canonical.width();
    r.height = canonical.height();
    const auto segments = detect_line_segments(canonical, params.lsd);
    r.segments_count = int(segments.size());
    r.triangles = ransac_detect(segments, params.ransac, canonical.width(), canonical.height());
    return r;
}

double scene_distance(const AnalysisRecord& a, const AnalysisRecord& b, double alpha) {
    require(a.vp && a.seg && b.vp && b.seg, "scene distance needs a vanishing point and a segmentation");
    const RegionLabelMap sa = resample_nearest(*a.seg, kCommonLabelWidth, kCommonLabelHeight);
    const RegionLabelMap sb = resample_nearest(*b.seg, kCommonLabelWidth, kCommonLabelHeight);
    const double f = 1.0 - rand_index(sa, sb);
    const double d = distance(to_common_frame(*a.vp, a.width, a.height), to_common_frame(*b.vp, b.width, b.height));
    return f + alpha * d / std::hypot(kFrameWidth, kFrameHeight);
}

std::vector<SceneMatch> rank_scene(const AnalysisRecord& query, const CompositionIndex& index,
                                   const RetrievalConfig& cfg) {
    cfg.validate();
    require(index.mode == IndexMode::Scene, "scene queries need a scene index");
    std::vector<SceneMatch> out(index.records.size());
    parallel_for(index.records.size(), [&](std::size_t i) {
        out[i] = {index.records[i].image_id, scene_distance(query, index.records[i], cfg.alpha)};
    });
    std::sort(out.begin(), out.end(), [](const SceneMatch& a, const SceneMatch& b) {
        return a.distance != b.distance ? a.distance < b.distance : a.image_id < b.image_id;
    });
    if (out.size() > std::size_t(cfg.topk))
        out.resize(std::size_t(cfg.topk));
    return out;
}

std::vector<SceneMatch> query_scene(const ImageBuffer& image, const CompositionIndex& index,
                                    const RetrievalConfig& cfg) {
    cfg.validate();
    require(index.mode == IndexMode::Scene, "scene queries need a scene index");
    if (index.records.empty())
        return {};
    return rank_scene(analyze_scene(resize_canonical(image), index.params), index, cfg);
}

std::vector<SketchMatch> query_sketch(const SketchQuery& query, const CompositionIndex& index,
                                      const RetrievalConfig& cfg) {
    cfg.validate();
    query.validate();
    require(index.mode == IndexMode::Portrait, "sketch queries need a portrait index");
    std::vector<SketchMatch> out;
    for (const auto& r : index.records) {
        const auto matched = match_sketch(query, r.triangles);
        if (!matched.empty())
            out.push_back({r.image_id, matched.front()});
    }
    std::sort(out.begin(), out.end(), [](const SketchMatch& a, const SketchMatch& b) {
        if (a.triangle.continuity_ratio != b.triangle.continuity_ratio)
            return a.triangle.continuity_ratio > b.triangle.continuity_ratio;
        return a.image_id < b.image_id;
    });
    if (out.size() > std::size_t(cfg.topk))
        out.resize(std::size_t(cfg.topk));
    return out;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 initialisation failed");
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf.data(), std::size_t(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

void save_index(const CompositionIndex& index, const fs::path& dir) {
    fs::create_directories(dir / "records");
    fs::create_directories(dir / "labels");
    std::set<std::string> ids, with_labels;
    json manifest;
    manifest["format_version"] = index.version;
    manifest["mode"] = std::string(to_string(index.mode));
    manifest["params"] = index.params;
    manifest["images_dir"] = index.images_dir;
    manifest["records"] = json::array();
    for (const auto& r : index.records) {
        require(ids.insert(r.image_id).second, "duplicate image id " + r.image_id);
        manifest["records"].push_back(r.image_id);
        write_text(dir / "records" / (r.image_id + ".json"), record_json(r).dump(2) + "\n");
        if (r.seg) {
            save_label_map(*r.seg, dir / "labels" / (r.image_id + ".png"));
            with_labels.insert(r.image_id);
        }
    }
    // Drop files of records that are no longer part of the index.
    for (const char* sub : {"records", "labels"}) {
        for (const auto& entry : fs::directory_iterator(dir / sub)) {
            const std::string stem = entry.path().stem().string();
            const bool keep = std::string(sub) == "records" ? ids.contains(stem) : with_labels.contains(stem);
            if (!keep)
                fs::remove(entry.path());
        }
    }
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

CompositionIndex load_index(const fs::path& dir) {
    const json manifest = read_json(dir / "manifest.json");
    CompositionIndex index;
    try {
        index.version = manifest.at("format_version").get<int>();
        require(index.version == CompositionIndex::kFormatVersion,
                "unsupported index format version " + std::to_string(index.version));
        index.mode = parse_index_mode(manifest.at("mode").get<std::string>());
        index.params = manifest.at("params").get<AnalysisParams>();
        index.images_dir = manifest.value("images_dir", std::string());
        for (const auto& id : manifest.at("records"))
            index.records.push_back(record_from_json(read_json(dir / "records" / (id.get<std::string>() + ".json")), dir));
    } catch (const json::exception& e) {
        throw InvalidInput("malformed index in " + dir.string() + ": " + e.what());
    }
    std::sort(index.records.begin(), index.records.end(),
              [](const AnalysisRecord& a, const AnalysisRecord& b) { return a.image_id < b.image_id; });
    return index;
}

CompositionIndex build_index(const fs::path& images_dir, IndexMode mode, const AnalysisParams& params,
                             const fs::path& index_dir) {
    params.validate();
    require(fs::is_directory(images_dir), "not a directory: " + images_dir.string());
    fs::create_directories(index_dir);
    DirectoryLock lock(index_dir);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(images_dir))
        if (entry.is_regular_file() && is_image_file(entry.path()))
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    std::map<std::string, AnalysisRecord> previous;
    if (fs::exists(index_dir / "manifest.json")) {
        try {
            CompositionIndex old = load_index(index_dir);
            if (old.mode == mode && old.params == params)
                for (auto& r : old.records)
                    previous.emplace(r.image_id, std::move(r));
        } catch (const std::exception& e) {
            spdlog::warn("ignoring existing index in {}: {}", index_dir.string(), e.what());
        }
    }

    std::vector<std::optional<AnalysisRecord>> records(files.size());
    std::mutex log_mutex;
    parallel_for(files.size(), [&](std::size_t i) {
        const std::string id = files[i].filename().string();
        std::string hash;
        ImageBuffer canonical;
        try {
            hash = sha256_file(files[i]);
            if (auto it = previous.find(id); it != previous.end() && it->second.content_hash == hash) {
                records[i] = it->second;
                return;
            }
            canonical = resize_canonical(load_image(files[i]));
        } catch (const InvalidInput& e) {
            std::lock_guard guard(log_mutex);
            spdlog::warn("skipping {}: {}", files[i].string(), e.what());
            return;
        }
        AnalysisRecord r = mode == IndexMode::Scene ? analyze_scene(canonical, params) : analyze_portrait(canonical, params);
        r.image_id = id;
        r.content_hash = hash;
        records[i] = std::move(r);
    });

    CompositionIndex index;
    index.mode = mode;
    index.params = params;
    index.images_dir = images_dir.string();
    for (auto& r : records)
        if (r)
            index.records.push_back(std::move(*r));
    std::sort(index.records.begin(), index.records.end(),
              [](const AnalysisRecord& a, const AnalysisRecord& b) { return a.image_id < b.image_id; });
    save_index(index, index_dir);
    return index;
}

} // namespace compose
