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

#include "compose/cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "../io/json_io.hpp"
#include "compose/cli/overlay.hpp"
#include "compose/core/errors.hpp"
#include "compose/lines/line_segments.hpp"
#include "compose/metrics/metrics.hpp"
#include "compose/retrieval/index.hpp"
#include "compose/segmentation/overseg.hpp"
#include "compose/segmentation/segmentation.hpp"
#include "compose/triangles/triangles.hpp"
#include "compose/vp/vanishing_point.hpp"

namespace compose {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string out = ".";
    int verbosity = 0;
    bool native = false;

    std::string image;
    std::string grid = "50x33";
    std::string vp;
    std::string contours;
    std::string overseg;
    int k = 0;

    AnalysisParams params;
    RetrievalConfig retrieval;

    double l1 = 0.0;
    double l2 = 90.0;
    std::string open;
    double orient_tolerance = 11.25;
    int overlays = 3;

    std::string images_dir;
    std::string mode = "scene";
    std::string index_dir;
    bool sheet = false;

    std::string gt;
    std::string pred;
    double delta = 0.3;
    std::vector<double> thresholds{5, 10, 15, 20, 25, 30, 40, 50, 75, 100};
};

void parse_grid(Options& o) {
    static const std::regex pattern(R"((\d+)[xX](\d+))");
    std::smatch m;
    if (!std::regex_match(o.grid, m, pattern))
        throw InvalidInput("grid must look like 50x33, got '" + o.grid + "'");
    o.params.vp.grid_cols = std::stoi(m[1]);
    o.params.vp.grid_rows = std::stoi(m[2]);
}

Point2 parse_point(const std::string& text) {
    static const std::regex pattern(R"(\s*(-?[0-9.]+)\s*,\s*(-?[0-9.]+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw InvalidInput("point must look like x,y, got '" + text + "'");
    return {std::stod(m[1]), std::stod(m[2])};
}

void add_common(CLI::App* app, Options& o) {
    app->add_option("--out", o.out, "Output directory");
    app->add_flag("-v,--verbose", o.verbosity, "Increase log verbosity");
}

void add_image(CLI::App* app, Options& o) {
    app->add_option("image", o.image, "Input image")->required();
    app->add_flag("--native", o.native, "Analyze at the original size instead of the 500 px canonical size");
}

void add_segmentation_flags(CLI::App* app, Options& o) {
    auto& s = o.params.segmentation;
    app->add_option("--lambda", s.lambda, "Weight of the geometric cue");
    app->add_option("--delta", s.stop_delta, "Stop merging once the cheapest edge exceeds this weight");
    app->add_option("--k", o.k, "Stop at this many regions (0 = use --delta only)");
    app->add_option("--min-size", s.overseg_min_size, "Minimum over-segmentation region size");
    app->add_option("--scale", s.overseg_scale, "Over-segmentation scale parameter");
}

void add_vp_flags(CLI::App* app, Options& o) {
    app->add_option("--grid", o.grid, "Search grid as COLSxROWS");
    app->add_flag("--coarse-to-fine", o.params.vp.coarse_to_fine, "Refine around the best cell of a 10x7 pass");
}

void add_lsd_flags(CLI::App* app, Options& o) {
    auto& l = o.params.lsd;
    app->add_option("--density", l.density_threshold, "Minimum aligned-point density of a segment rectangle");
    app->add_option("--tolerance", l.angle_tolerance, "Level-line angle tolerance in degrees");
    app->add_option("--alpha", l.alpha, "Keep segments with confidence >= (1 - alpha) * max");
    app->add_option("--contours", o.contours, "Contour map PNG (gray 0-255) used for segment confidence");
}

void add_ransac_flags(CLI::App* app, Options& o) {
    auto& r = o.params.ransac;
    app->add_option("--iterations", r.iterations, "Pair samples when not all pairs fit the budget");
    app->add_option("--dnb", r.d_nb, "Neighborhood half-width around a fitted line, pixels");
    app->add_option("--min-cr", r.min_cr, "Minimum continuity ratio");
    app->add_option("--min-tr", r.min_tr, "Minimum total ratio");
    app->add_option("--seed", r.rng_seed, "Random seed");
    app->add_option("--min-length", r.min_segment_length, "Drop segments shorter than this before fitting");
}

void add_sketch_flags(CLI::App* app, Options& o, bool required) {
    auto* a = app->add_option("--l1", o.l1, "First side orientation in degrees [0, 180)");
    auto* b = app->add_option("--l2", o.l2, "Second side orientation in degrees [0, 180)");
    auto* c = app->add_option("--open", o.open, "Opening direction: up, down, left or right");
    app->add_option("--orient-tolerance", o.orient_tolerance, "Orientation tolerance in degrees");
    if (required) {
        a->required();
        b->required();
        c->required();
    }
}

void finalize(Options& o) {
    parse_grid(o);
    if (o.k > 0)
        o.params.segmentation.target_regions = o.k;
    else if (o.k < 0)
        throw InvalidInput("--k must be positive");
    o.params.validate();
    o.retrieval.validate();
    spdlog::set_level(o.verbosity >= 2 ? spdlog::level::debug : o.verbosity == 1 ? spdlog::level::info
                                                                                 : spdlog::level::warn);
}

SketchQuery make_query(const Options& o) {
    SketchQuery q;
    q.orient1 = o.l1;
    q.orient2 = o.l2;
    q.opening = parse_opening(o.open);
    q.orient_tolerance = o.orient_tolerance;
    q.validate();
    return q;
}

fs::path out_dir(const Options& o) {
    fs::create_directories(o.out);
    return o.out;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

void emit(const Options& o, const std::string& name, const json& j) {
    write_json(out_dir(o) / name, j);
    std::cout << j.dump(2) << "\n";
}

ImageBuffer load_input(const Options& o) {
    ImageBuffer img = load_image(o.image);
    return o.native ? img : resize_canonical(img);
}

std::optional<ContourMap> load_contours(const Options& o, const ImageBuffer& img) {
    if (o.contours.empty())
        return std::nullopt;
    ContourMap map = load_contour_map(o.contours);
    require(map.width == img.width() && map.height == img.height(),
            "contour map is " + std::to_string(map.width) + "x" + std::to_string(map.height) + " but the image is " +
                std::to_string(img.width()) + "x" + std::to_string(img.height()) + " (see --native)");
    return map;
}

json triangles_json(std::span<const TriangleCandidate> t) { return json(std::vector<TriangleCandidate>(t.begin(), t.end())); }

// -- subcommands -----------------------------------------------------------

void cmd_vp(const Options& o) {
    const ImageBuffer img = load_input(o);
    const VpScoreMap map = detect_dominant_vp(img, o.params.vp, o.params.segmentation);
    json j{{"vp", map.best}, {"score", map.best_score}, {"grid", {map.cols, map.rows}}, {"width", img.width()},
           {"height", img.height()}};
    save_image(render_heatmap(map, img.width(), img.height()), out_dir(o) / "vp_heatmap.png");
    save_image(draw_overlay(img, {.vp = map.best}), out_dir(o) / "vp_overlay.png");
    emit(o, "vp.json", j);
}

void cmd_segment(const Options& o) {
    const ImageBuffer img = load_input(o);
    SegmentationInputs inputs;
    inputs.contours = load_contours(o, img);
    if (!o.overseg.empty()) {
        inputs.overseg = load_label_map(o.overseg);
        require(inputs.overseg->width() == img.width() && inputs.overseg->height() == img.height(),
                "over-segmentation size does not match the image");
    }
    Point2 pole;
    if (!o.vp.empty()) {
        pole = parse_point(o.vp);
    } else {
        const RegionLabelMap overseg = inputs.overseg ? *inputs.overseg : overseg_initial(img, o.params.segmentation);
        const BoundaryStrengthMap strengths = inputs.contours ? *inputs.contours : boundary_strength(img);
        pole = search_vp(ConsensusScorer(overseg, strengths), img.width(), img.height(), o.params.vp).best;
    }
    const SegmentationResult result = segment_image(img, pole, o.params.segmentation, inputs);
    save_label_map(result.labels, out_dir(o) / "labels.png");
    save_image(draw_overlay(img, {.regions = &result.labels, .vp = pole}), out_dir(o) / "segment_overlay.png");
    const auto& s = o.params.segmentation;
    emit(o, "segment.json",
         json{{"lambda", s.lambda}, {"stop_delta", s.stop_delta}, {"num_regions", result.labels.num_regions()},
              {"vp", pole}, {"labels", "labels.png"}});
}

void cmd_lines(const Options& o) {
    const ImageBuffer img = load_input(o);
    const auto contours = load_contours(o, img);
    const auto segments = detect_line_segments(img, o.params.lsd, contours ? &*contours : nullptr);
    save_image(draw_overlay(img, {.segments = segments}), out_dir(o) / "lines_overlay.png");
    emit(o, "lines.json", json(segments));
}

void cmd_triangles(const Options& o) {
    const ImageBuffer img = load_input(o);
    const auto contours = load_contours(o, img);
    const auto segments = detect_line_segments(img, o.params.lsd, contours ? &*contours : nullptr);
    auto found = ransac_detect(segments, o.params.ransac, img.width(), img.height());
    if (!o.open.empty())
        found = match_sketch(make_query(o), found);
    const fs::path dir = out_dir(o);
    for (int i = 0; i < std::min<int>(o.overlays, int(found.size())); ++i)
        save_image(draw_overlay(img, {.triangles = std::span(&found[std::size_t(i)], 1)}),
                   dir / ("triangle_" + std::to_string(i + 1) + ".png"));
    emit(o, "triangles.json", triangles_json(found));
}

void cmd_analyze(const Options& o) {
    const ImageBuffer img = load_input(o);
    const auto contours = load_contours(o, img);
    const RegionLabelMap overseg = overseg_initial(img, o.params.segmentation);
    const BoundaryStrengthMap strengths = contours ? *contours : boundary_strength(img);
    const VpScoreMap map = search_vp(ConsensusScorer(overseg, strengths), img.width(), img.height(), o.params.vp);
    SegmentationInputs inputs{overseg, contours};
    const SegmentationResult seg = segment_image(img, map.best, o.params.segmentation, inputs);
    const auto segments = detect_line_segments(img, o.params.lsd, contours ? &*contours : nullptr);
    const auto found = ransac_detect(segments, o.params.ransac, img.width(), img.height());

    const fs::path dir = out_dir(o);
    save_label_map(seg.labels, dir / "labels.png");
    save_image(render_heatmap(map, img.width(), img.height()), dir / "vp_heatmap.png");
    save_image(draw_overlay(img, {.regions = &seg.labels, .vp = map.best}), dir / "scene_overlay.png");
    const std::span<const TriangleCandidate> top(found.data(), std::min<std::size_t>(found.size(), 1));
    save_image(draw_overlay(img, {.segments = segments, .triangles = top}), dir / "portrait_overlay.png");
    emit(o, "analysis.json",
         json{{"image", fs::path(o.image).filename().string()},
              {"width", img.width()},
              {"height", img.height()},
              {"vp", map.best},
              {"vp_score", map.best_score},
              {"num_regions", seg.labels.num_regions()},
              {"labels", "labels.png"},
              {"segments", segments},
              {"triangles", triangles_json(found)},
              {"params", o.params}});
}

void cmd_index_build(const Options& o) {
    const CompositionIndex index = build_index(o.images_dir, parse_index_mode(o.mode), o.params, o.out);
    std::cout << json{{"index", o.out}, {"mode", to_string(index.mode)}, {"records", index.records.size()}}.dump(2)
              << "\n";
}

ImageBuffer sheet_tile(const CompositionIndex& index, const std::string& id, const AnalysisRecord* record,
                       const TriangleCandidate* triangle) {
    const ImageBuffer img = resize_canonical(load_image(fs::path(index.images_dir) / id));
    OverlayContent content;
    if (record && img.width() == record->width && img.height() == record->height) {
        content.vp = record->vp;
        if (record->seg)
            content.regions = &*record->seg;
    }
    if (triangle)
        content.triangles = std::span(triangle, 1);
    return draw_overlay(img, content);
}

void cmd_query_scene(const Options& o) {
    const CompositionIndex index = load_index(o.index_dir);
    const auto ranking = query_scene(load_image(o.image), index, o.retrieval);
    json j = json::array();
    for (const auto& m : ranking)
        j.push_back({{"image_id", m.image_id}, {"distance", m.distance}});
    if (o.sheet) {
        std::vector<ImageBuffer> tiles;
        for (const auto& m : ranking)
            tiles.push_back(sheet_tile(index, m.image_id, index.find(m.image_id), nullptr));
        save_image(contact_sheet(tiles), out_dir(o) / "contact_sheet.png");
    }
    emit(o, "query.json", j);
}

void cmd_query_sketch(const Options& o) {
    const CompositionIndex index = load_index(o.index_dir);
    const auto ranking = query_sketch(make_query(o), index, o.retrieval);
    json j = json::array();
    for (const auto& m : ranking)
        j.push_back({{"image_id", m.image_id}, {"triangle", m.triangle}});
    if (o.sheet) {
        std::vector<ImageBuffer> tiles;
        for (const auto& m : ranking)
            tiles.push_back(sheet_tile(index, m.image_id, nullptr, &m.triangle));
        save_image(contact_sheet(tiles), out_dir(o) / "contact_sheet.png");
    }
    emit(o, "query.json", j);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
}

struct CsvRows {
    std::ostringstream text{"metric,parameter,value\n", std::ios::ate};
    void add(const std::string& metric, const std::string& param, double value) {
        text << metric << ',' << param << ',' << std::setprecision(10) << value << '\n';
    }
};

void emit_csv(const Options& o, const CsvRows& rows) {
    std::ofstream out(out_dir(o) / "eval.csv");
    out << rows.text.str();
    std::cout << rows.text.str();
}

void cmd_eval_seg(const Options& o) {
    const RegionLabelMap gt = load_label_map(o.gt);
    const RegionLabelMap pred = load_label_map(o.pred);
    CsvRows rows;
    rows.add("rand_index", "", rand_index(gt, pred));
    rows.add("variation_of_information", "", variation_of_information(gt, pred));
    const CoveringScores sc = segmentation_covering_both(gt, pred);
    rows.add("segmentation_covering", "pred_covers_gt", sc.s2_covers_s1);
    rows.add("segmentation_covering", "gt_covers_pred", sc.s1_covers_s2);
    rows.add("segmentation_covering", "symmetric", sc.symmetric);
    emit_csv(o, rows);
}

// Both files map image ids to {"x", "y"}; only ids present in both count.
void cmd_eval_vp(const Options& o) {
    const json gt = read_json_file(o.gt);
    const json pred = read_json_file(o.pred);
    std::vector<Point2> truths, detections;
    try {
        for (const auto& [id, p] : gt.items()) {
            if (!pred.contains(id)) {
                spdlog::warn("no detection for {}", id);
                continue;
            }
            const json& d = pred.at(id);
            truths.push_back(p.get<Point2>());
            detections.push_back((d.contains("vp") ? d.at("vp") : d).get<Point2>());
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed vanishing point file: ") + e.what());
    }
    CsvRows rows;
    for (const auto& [t, rate] : vp_success_curve(detections, truths, o.thresholds))
        rows.add("vp_success_rate", std::to_string(t), rate);
    emit_csv(o, rows);
}

// Candidate objects are matched in descending CR order; plain point lists
// keep their file order.
std::vector<Triangle2> read_triangles(const json& list) {
    std::vector<std::pair<double, Triangle2>> items;
    for (const auto& t : list) {
        if (t.is_object()) {
            const auto c = t.get<TriangleCandidate>();
            items.emplace_back(c.continuity_ratio, c.triangle());
        } else {
            require(t.size() == 3, "a triangle needs three points");
            items.emplace_back(0.0, Triangle2{t[0].get<Point2>(), t[1].get<Point2>(), t[2].get<Point2>()});
        }
    }
    std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Triangle2> out;
    for (const auto& [cr, tri] : items)
        out.push_back(tri);
    return out;
}

// Both files map image ids to triangle lists: arrays of three points, or
// candidate objects as written by `triangles` (already ranked).
void cmd_eval_triangles(const Options& o) {
    const json gt = read_json_file(o.gt);
    const json pred = read_json_file(o.pred);
    std::size_t matches = 0, n_gt = 0, n_pred = 0;
    try {
        for (const auto& [id, list] : gt.items()) {
            const auto truths = read_triangles(list);
            const auto cands = pred.contains(id) ? read_triangles(pred.at(id)) : std::vector<Triangle2>{};
            const PrecisionRecall pr = precision_recall(truths, cands, o.delta);
            matches += pr.matches;
            n_gt += truths.size();
            n_pred += cands.size();
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed triangle file: ") + e.what());
    }
    CsvRows rows;
    const std::string d = std::to_string(o.delta);
    rows.add("precision", d, n_pred ? double(matches) / double(n_pred) : 0.0);
    rows.add("recall", d, n_gt ? double(matches) / double(n_gt) : 0.0);
    emit_csv(o, rows);
}

} // namespace

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(int(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    Options o;
    CLI::App app{"Triangle-based composition analysis: vanishing points, geometric segmentation, portrait "
                 "triangles and composition retrieval"};
    app.name("compose");
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "Read flags from a key=value file (flags on the command line win)");
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Full analysis of one image");
    add_image(analyze, o);
    add_common(analyze, o);
    add_segmentation_flags(analyze, o);
    add_vp_flags(analyze, o);
    add_lsd_flags(analyze, o);
    add_ransac_flags(analyze, o);

    auto* segment = app.add_subcommand("segment", "Geometric segmentation about a vanishing point");
    add_image(segment, o);
    add_common(segment, o);
    add_segmentation_flags(segment, o);
    add_vp_flags(segment, o);
    segment->add_option("--vp", o.vp, "Vanishing point as x,y (detected when omitted)");
    segment->add_option("--contours", o.contours, "Contour map PNG replacing the boundary strength map");
    segment->add_option("--overseg", o.overseg, "16-bit label map PNG replacing the built-in over-segmentation");

    auto* vp = app.add_subcommand("vp", "Dominant vanishing point by grid search");
    add_image(vp, o);
    add_common(vp, o);
    add_vp_flags(vp, o);
    add_segmentation_flags(vp, o);

    auto* lines = app.add_subcommand("lines", "Line segments with contour confidence");
    add_image(lines, o);
    add_common(lines, o);
    add_lsd_flags(lines, o);

    auto* triangles = app.add_subcommand("triangles", "Triangle candidates from line segments");
    add_image(triangles, o);
    add_common(triangles, o);
    add_lsd_flags(triangles, o);
    add_ransac_flags(triangles, o);
    add_sketch_flags(triangles, o, false);
    triangles->add_option("--overlays", o.overlays, "Number of top candidates rendered as overlay PNGs");

    auto* index = app.add_subcommand("index", "Composition index management");
    index->require_subcommand(1);
    auto* build = index->add_subcommand("build", "Analyze a directory of images into an index");
    build->add_option("dir", o.images_dir, "Directory of images")->required();
    build->add_option("--mode", o.mode, "scene or portrait");
    build->add_option("--out", o.out, "Index directory")->required();
    build->add_flag("-v,--verbose", o.verbosity, "Increase log verbosity");
    add_segmentation_flags(build, o);
    add_vp_flags(build, o);
    add_lsd_flags(build, o);
    add_ransac_flags(build, o);

    auto* query = app.add_subcommand("query", "Retrieve photos by composition");
    query->require_subcommand(1);
    auto* qscene = query->add_subcommand("scene", "Rank indexed scenes by similarity to an image");
    qscene->add_option("image", o.image, "Query image")->required();
    qscene->add_option("--index", o.index_dir, "Index directory")->required();
    qscene->add_option("--topk", o.retrieval.topk, "Number of results");
    qscene->add_option("--alpha", o.retrieval.alpha, "Weight of the vanishing-point term");
    qscene->add_flag("--sheet", o.sheet, "Also write a contact sheet of the results");
    add_common(qscene, o);
    auto* qsketch = query->add_subcommand("sketch", "Rank indexed portraits by a two-sided sketch");
    add_sketch_flags(qsketch, o, true);
    qsketch->add_option("--index", o.index_dir, "Index directory")->required();
    qsketch->add_option("--topk", o.retrieval.topk, "Number of results")->default_val(20);
    qsketch->add_flag("--sheet", o.sheet, "Also write a contact sheet of the results");
    add_common(qsketch, o);

    auto* eval = app.add_subcommand("eval", "Evaluation against ground truth (CSV output)");
    eval->require_subcommand(1);
    auto* eseg = eval->add_subcommand("seg", "RI, VOI and covering between two label maps");
    auto* evp = eval->add_subcommand("vp", "Vanishing point success rate over thresholds");
    auto* etri = eval->add_subcommand("triangles", "Triangle precision and recall");
    for (auto* e : {eseg, evp, etri}) {
        e->add_option("--gt", o.gt, "Ground truth file")->required();
        e->add_option("--pred", o.pred, "Prediction file")->required();
        add_common(e, o);
    }
    evp->add_option("--thresholds", o.thresholds, "Distance thresholds in pixels");
    etri->add_option("--delta", o.delta, "Vertex displacement tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        finalize(o);
        if (*analyze)
            cmd_analyze(o);
        else if (*segment)
            cmd_segment(o);
        else if (*vp)
            cmd_vp(o);
        else if (*lines)
            cmd_lines(o);
        else if (*triangles)
            cmd_triangles(o);
        else if (*build)
            cmd_index_build(o);
        else if (*qscene)
            cmd_query_scene(o);
        else if (*qsketch)
            cmd_query_sketch(o);
        else if (*eseg)
            cmd_eval_seg(o);
        else if (*evp)
            cmd_eval_vp(o);
        else if (*etri)
            cmd_eval_triangles(o);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}

} // namespace compose
