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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "compose/core/errors.hpp"
#include "compose/core/image.hpp"
#include "compose/lines/line_segments.hpp"
#include "compose/metrics/metrics.hpp"
#include "compose/retrieval/index.hpp"
#include "compose/segmentation/segmentation.hpp"
#include "compose/triangles/triangles.hpp"
#include "compose/vp/vanishing_point.hpp"

namespace py = pybind11;
using namespace compose;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using I32Array = py::array_t<std::int32_t, py::array::c_style | py::array::forcecast>;

// (H, W, 3) uint8 RGB, or (H, W) gray replicated to three channels.
ImageBuffer to_image(const U8Array& a) {
    require(a.ndim() == 3 ? a.shape(2) == 3 : a.ndim() == 2, "image must have shape (H, W, 3) or (H, W)");
    const int h = int(a.shape(0)), w = int(a.shape(1));
    std::vector<std::uint8_t> rgb(std::size_t(w) * std::size_t(h) * 3);
    if (a.ndim() == 3) {
        std::memcpy(rgb.data(), a.data(), rgb.size());
    } else {
        for (std::size_t i = 0; i < std::size_t(w) * std::size_t(h); ++i)
            rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = a.data()[i];
    }
    return ImageBuffer(w, h, std::move(rgb));
}

U8Array from_image(const ImageBuffer& img) {
    U8Array out({py::ssize_t(img.height()), py::ssize_t(img.width()), py::ssize_t(3)});
    std::memcpy(out.mutable_data(), img.pixels().data(), img.pixels().size());
    return out;
}

RegionLabelMap to_labels(const I32Array& a) {
    require(a.ndim() == 2, "label map must have shape (H, W)");
    const int h = int(a.shape(0)), w = int(a.shape(1));
    return RegionLabelMap::relabeled(w, h, std::span(a.data(), std::size_t(w) * std::size_t(h)));
}

I32Array from_labels(const RegionLabelMap& labels) {
    I32Array out({py::ssize_t(labels.height()), py::ssize_t(labels.width())});
    std::memcpy(out.mutable_data(), labels.labels().data(), labels.size() * sizeof(std::int32_t));
    return out;
}

py::tuple point(Point2 p) { return py::make_tuple(p.x, p.y); }

Point2 to_point(const std::pair<double, double>& p) { return {p.first, p.second}; }

py::dict triangle_dict(const TriangleCandidate& t) {
    py::dict d;
    d["apex"] = point(t.apex);
    d["vertex_x"] = point(t.vertex_x);
    d["vertex_y"] = point(t.vertex_y);
    d["continuity_ratio"] = t.continuity_ratio;
    d["total_ratio"] = t.total_ratio;
    d["opening"] = std::string(to_string(t.opening));
    return d;
}

AnalysisParams grid_params(int cols, int rows) {
    AnalysisParams p;
    p.vp.grid_cols = cols;
    p.vp.grid_rows = rows;
    return p;
}

} // namespace

PYBIND11_MODULE(compose, m) {
    m.doc() = "Triangle-based photo composition: vanishing points, geometric segmentation, portrait triangles and "
              "composition retrieval";

    m.def("load_image", [](const std::filesystem::path& path) { return from_image(load_image(path)); },
          py::arg("path"), "Reads an image file as an (H, W, 3) uint8 RGB array.");

    m.def("save_image", [](const U8Array& image, const std::filesystem::path& path) { save_image(to_image(image), path); },
          py::arg("image"), py::arg("path"), "Writes an (H, W, 3) or (H, W) uint8 array; the format follows the extension.");

    m.def("resize_canonical", [](const U8Array& image) { return from_image(resize_canonical(to_image(image))); },
          py::arg("image"), "Resizes so the longer side is 500 px, keeping the aspect ratio.");

    m.def(
        "detect_vp",
        [](const U8Array& image, int cols, int rows, bool coarse_to_fine) {
            const ImageBuffer img = to_image(image);
            VpSearchConfig cfg;
            cfg.grid_cols = cols;
            cfg.grid_rows = rows;
            cfg.coarse_to_fine = coarse_to_fine;
            VpScoreMap map;
            {
                py::gil_scoped_release release;
                map = detect_dominant_vp(img, cfg);
            }
            py::array_t<double> scores({py::ssize_t(map.rows), py::ssize_t(map.cols)});
            std::memcpy(scores.mutable_data(), map.scores.data(), map.scores.size() * sizeof(double));
            py::dict d;
            d["vp"] = point(map.best);
            d["score"] = map.best_score;
            d["scores"] = scores;
            return d;
        },
        py::arg("image"), py::arg("cols") = 50, py::arg("rows") = 33, py::arg("coarse_to_fine") = false,
        "Grid search for the dominant vanishing point. Returns vp, score and the (rows, cols) score grid.");

    m.def(
        "segment",
        [](const U8Array& image, std::pair<double, double> vp, double lam, double delta, int k) {
            const ImageBuffer img = to_image(image);
            SegmentationConfig cfg;
            cfg.lambda = lam;
            cfg.stop_delta = delta;
            if (k > 0)
                cfg.target_regions = k;
            RegionLabelMap labels(1, 1, {0});
            {
                py::gil_scoped_release release;
                labels = segment_image(img, to_point(vp), cfg).labels;
            }
            return from_labels(labels);
        },
        py::arg("image"), py::arg("vp"), py::arg("lam") = 0.6, py::arg("delta") = 0.55, py::arg("k") = 0,
        "Geometric segmentation about a vanishing point. Returns an (H, W) int32 label map.");

    m.def(
        "detect_lines",
        [](const U8Array& image, double density, double tolerance, double alpha) {
            const ImageBuffer img = to_image(image);
            LsdConfig cfg;
            cfg.density_threshold = density;
            cfg.angle_tolerance = tolerance;
            cfg.alpha = alpha;
            std::vector<LineSegment> segs;
            {
                py::gil_scoped_release release;
                segs = detect_line_segments(img, cfg);
            }
            py::array_t<double> out({py::ssize_t(segs.size()), py::ssize_t(5)});
            auto v = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < segs.size(); ++i) {
                v(i, 0) = segs[i].p0.x;
                v(i, 1) = segs[i].p0.y;
                v(i, 2) = segs[i].p1.x;
                v(i, 3) = segs[i].p1.y;
                v(i, 4) = segs[i].confidence;
            }
            return out;
        },
        py::arg("image"), py::arg("density") = 0.2, py::arg("tolerance") = 22.5, py::arg("alpha") = 0.5,
        "Line segments as an (N, 5) array of x0, y0, x1, y1, confidence.");

    m.def(
        "detect_triangles",
        [](const U8Array& image, int iterations, std::uint64_t seed) {
            const ImageBuffer img = to_image(image);
            RansacConfig cfg;
            cfg.iterations = iterations;
            cfg.rng_seed = seed;
            std::vector<TriangleCandidate> found;
            {
                py::gil_scoped_release release;
                found = ransac_detect(detect_line_segments(img, {}), cfg, img.width(), img.height());
            }
            py::list out;
            for (const auto& t : found)
                out.append(triangle_dict(t));
            return out;
        },
        py::arg("image"), py::arg("iterations") = 2000, py::arg("seed") = 0,
        "Triangle candidates sorted by continuity ratio, descending.");

    m.def("rand_index", [](const I32Array& a, const I32Array& b) { return rand_index(to_labels(a), to_labels(b)); },
          py::arg("a"), py::arg("b"));
    m.def(
        "variation_of_information",
        [](const I32Array& a, const I32Array& b) { return variation_of_information(to_labels(a), to_labels(b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "segmentation_covering",
        [](const I32Array& covered, const I32Array& cover) {
            return segmentation_covering(to_labels(covered), to_labels(cover));
        },
        py::arg("covered"), py::arg("cover"), "How well `cover` covers `covered`.");

    m.def(
        "build_index",
        [](const std::filesystem::path& images, const std::filesystem::path& out, const std::string& mode, int cols,
           int rows) {
            const IndexMode parsed = parse_index_mode(mode);
            py::gil_scoped_release release;
            return build_index(images, parsed, grid_params(cols, rows), out).records.size();
        },
        py::arg("images"), py::arg("out"), py::arg("mode") = "scene", py::arg("cols") = 50, py::arg("rows") = 33,
        "Analyzes a directory of images into an index. Returns the number of records.");

    m.def(
        "query_scene",
        [](const U8Array& image, const std::filesystem::path& index_dir, int topk, double alpha) {
            const ImageBuffer img = to_image(image);
            RetrievalConfig cfg;
            cfg.topk = topk;
            cfg.alpha = alpha;
            std::vector<SceneMatch> ranked;
            {
                py::gil_scoped_release release;
                ranked = query_scene(img, load_index(index_dir), cfg);
            }
            py::list out;
            for (const auto& r : ranked)
                out.append(py::make_tuple(r.image_id, r.distance));
            return out;
        },
        py::arg("image"), py::arg("index"), py::arg("topk") = 8, py::arg("alpha") = 0.5,
        "Ranks indexed scenes by composition distance. Returns (image_id, distance) pairs.");

    m.def(
        "query_sketch",
        [](const std::filesystem::path& index_dir, double l1, double l2, const std::string& opening, int topk) {
            SketchQuery q;
            q.orient1 = l1;
            q.orient2 = l2;
            q.opening = parse_opening(opening);
            q.validate();
            RetrievalConfig cfg;
            cfg.topk = topk;
            py::list out;
            for (const auto& r : query_sketch(q, load_index(index_dir), cfg))
                out.append(py::make_tuple(r.image_id, triangle_dict(r.triangle)));
            return out;
        },
        py::arg("index"), py::arg("l1"), py::arg("l2"), py::arg("opening"), py::arg("topk") = 20,
        "Ranks indexed portraits by a two-sided sketch. Returns (image_id, triangle) pairs.");
}
