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

#include "compose/lines/line_segments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "compose/core/errors.hpp"

namespace compose {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

bool aligned(double angle, double axis, double tolerance) { return orientation_difference(angle, axis) <= tolerance; }

// Signed orientation difference wrapped to (-90, 90].
double signed_orientation_difference(double a, double b) {
    double d = std::fmod(a - b, 180.0);
    if (d <= -90.0)
        d += 180.0;
    else if (d > 90.0)
        d -= 180.0;
    return d;
}

double mean_orientation(double sum_cos2, double sum_sin2) {
    double deg = 0.5 * std::atan2(sum_sin2, sum_cos2) / kDeg;
    if (deg < 0.0)
        deg += 180.0;
    return deg >= 180.0 ? 0.0 : deg;
}

struct GrowResult {
    std::vector<PixelCoord> pixels;
    double mean_angle;
};

// Region growing from a seed. `allowed` restricts candidates when non-null.
template <class Allowed>
GrowResult grow(const LevelLineField& field, PixelCoord seed, double tolerance, Grid<std::uint8_t>& used,
                Allowed&& allowed) {
    GrowResult out;
    double angle0 = field.angle(seed.x, seed.y);
    double sc = std::cos(2.0 * angle0 * kDeg);
    double ss = std::sin(2.0 * angle0 * kDeg);
    double mean = angle0;
    out.pixels.push_back(seed);
    used(seed.x, seed.y) = 1;
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        const PixelCoord p = out.pixels[i];
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int x = p.x + dx;
                const int y = p.y + dy;
                if ((dx == 0 && dy == 0) || !field.usable.contains(x, y))
                    continue;
                if (used(x, y) || !field.is_usable(x, y) || !allowed(x, y))
                    continue;
                const double a = field.angle(x, y);
                if (!aligned(a, mean, tolerance))
                    continue;
                used(x, y) = 1;
                out.pixels.push_back({x, y});
                sc += std::cos(2.0 * a * kDeg);
                ss += std::sin(2.0 * a * kDeg);
                mean = mean_orientation(sc, ss);
            }
        }
    }
    out.mean_angle = mean;
    return out;
}

struct Rect {
    Point2 center;
    Point2 u;   // long axis
    double l0, l1; // extent along u, relative to center
    double w0, w1; // extent along the normal
};

// Counts pixels inside the rectangle and the ones aligned with its axis.
void count_rect(const Rect& r, const LevelLineField& field, double tolerance, std::uint64_t& n, std::uint64_t& k) {
    const Point2 v{-r.u.y, r.u.x};
    const double axis = line_orientation(r.u.x, r.u.y);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (double l : {r.l0, r.l1}) {
        for (double w : {r.w0, r.w1}) {
            const Point2 c = r.center + r.u * l + v * w;
            xmin = std::min(xmin, c.x);
            xmax = std::max(xmax, c.x);
            ymin = std::min(ymin, c.y);
            ymax = std::max(ymax, c.y);
        }
    }
    const int x0 = std::max(0, int(std::floor(xmin)));
    const int x1 = std::min(field.width - 1, int(std::ceil(xmax)));
    const int y0 = std::max(0, int(std::floor(ymin)));
    const int y1 = std::min(field.height - 1, int(std::ceil(ymax)));
    constexpr double eps = 1e-9;
    n = 0;
    k = 0;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const Point2 d = Point2{double(x), double(y)} - r.center;
            const double l = d.dot(r.u);
            const double w = d.dot(v);
            if (l < r.l0 - eps || l > r.l1 + eps || w < r.w0 - eps || w > r.w1 + eps)
                continue;
            ++n;
            if (field.is_usable(x, y) && aligned(field.angle(x, y), axis, tolerance))
                ++k;
        }
    }
}

Rect fit_rect(const std::vector<PixelCoord>& pixels, const LevelLineField& field, double fallback_angle) {
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (const auto& p : pixels) {
        const double w = field.magnitude(p.x, p.y);
        sw += w;
        sx += w * p.x;
        sy += w * p.y;
    }
    if (sw <= 0.0) {
        sw = double(pixels.size());
        sx = sy = 0.0;
        for (const auto& p : pixels) {
            sx += p.x;
            sy += p.y;
        }
    }
    const Point2 c{sx / sw, sy / sw};
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& p : pixels) {
        const double w = sw == double(pixels.size()) ? 1.0 : double(field.magnitude(p.x, p.y));
        const double dx = p.x - c.x, dy = p.y - c.y;
        sxx += w * dx * dx;
        syy += w * dy * dy;
        sxy += w * dx * dy;
    }
    Point2 u;
    if (std::fabs(sxx - syy) < 1e-12 && std::fabs(sxy) < 1e-12) {
        // isotropic support: fall back on the level-line orientation (y-up)
        u = {std::cos(fallback_angle * kDeg), -std::sin(fallback_angle * kDeg)};
    } else {
        const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
        u = {std::cos(phi), std::sin(phi)};
    }
    const Point2 v{-u.y, u.x};
    double l0 = 1e300, l1 = -1e300, w0 = 1e300, w1 = -1e300;
    for (const auto& p : pixels) {
        const Point2 d = p.center() - c;
        l0 = std::min(l0, d.dot(u));
        l1 = std::max(l1, d.dot(u));
        w0 = std::min(w0, d.dot(v));
        w1 = std::max(w1, d.dot(v));
    }
    Rect r;
    r.center = c + u * (0.5 * (l0 + l1)) + v * (0.5 * (w0 + w1));
    r.u = u;
    const double half_len = 0.5 * (l1 - l0);
    const double half_wid = std::max(0.5 * (w1 - w0), 0.5);
    r.l0 = -half_len;
    r.l1 = half_len;
    r.w0 = -half_wid;
    r.w1 = half_wid;
    return r;
}

RectApprox describe(const Rect& r, const LevelLineField& field, double tolerance) {
    RectApprox out;
    out.direction = r.u;
    out.center = r.center + r.u * (0.5 * (r.l0 + r.l1)) + Point2{-r.u.y, r.u.x} * (0.5 * (r.w0 + r.w1));
    out.length = r.l1 - r.l0;
    out.width = r.w1 - r.w0;
    out.axis_angle = line_orientation(r.u.x, r.u.y);
    count_rect(r, field, tolerance, out.pixel_count, out.aligned_count);
    out.density = out.pixel_count ? double(out.aligned_count) / double(out.pixel_count) : 0.0;
    return out;
}

struct Evaluated {
    Rect rect;
    RectApprox info;
    double log_nfa;
};

Evaluated evaluate(const Rect& r, const LevelLineField& field, const LsdConfig& cfg) {
    Evaluated e{r, describe(r, field, cfg.angle_tolerance), 0.0};
    e.log_nfa = log10_nfa(e.info.pixel_count, e.info.aligned_count, cfg.angle_tolerance / 180.0, field.width + 1,
                          field.height + 1);
    return e;
}

} // namespace

void LsdConfig::validate() const {
    require(angle_tolerance > 0.0 && angle_tolerance < 90.0, "angle tolerance must lie in (0, 90)");
    require(density_threshold > 0.0 && density_threshold <= 1.0, "density threshold must lie in (0, 1]");
    require(magnitude_threshold >= 0.0, "magnitude threshold must be non-negative");
    require(nfa_epsilon > 0.0, "NFA epsilon must be positive");
    require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
}

LevelLineField level_line_field(const ImageBuffer& image, double magnitude_threshold) {
    const Grid<float> gray = luminance(image);
    const int w = image.width() - 1;
    const int h = image.height() - 1;
    LevelLineField f;
    f.width = w;
    f.height = h;
    f.angle = Grid<float>(w, h, 0.0f);
    f.magnitude = Grid<float>(w, h, 0.0f);
    f.usable = Grid<std::uint8_t>(w, h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double a = gray(x, y), b = gray(x + 1, y), c = gray(x, y + 1), d = gray(x + 1, y + 1);
            const double gx = 0.5 * (b + d - a - c);
            const double gy = 0.5 * (c + d - a - b);
            const double mag = std::hypot(gx, gy);
            f.magnitude(x, y) = float(mag);
            if (mag <= magnitude_threshold)
                continue;
            double level = std::atan2(-gy, gx) / kDeg + 90.0;
            level = std::fmod(level + 360.0, 180.0);
            f.angle(x, y) = float(level >= 180.0 ? 0.0 : level);
            f.usable(x, y) = 1;
        }
    }
    return f;
}

std::vector<LineSupportRegion> grow_regions(const LevelLineField& field, const LsdConfig& cfg) {
    cfg.validate();
    std::vector<std::uint32_t> order;
    for (std::size_t i = 0; i < field.usable.size(); ++i)
        if (field.usable[i])
            order.push_back(std::uint32_t(i));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t l, std::uint32_t r) { return field.magnitude[l] > field.magnitude[r]; });
    Grid<std::uint8_t> used(field.width, field.height, 0);
    std::vector<LineSupportRegion> regions;
    for (auto idx : order) {
        if (used[idx])
            continue;
        const PixelCoord seed{int(idx % std::uint32_t(field.width)), int(idx / std::uint32_t(field.width))};
        auto g = grow(field, seed, cfg.angle_tolerance, used, [](int, int) { return true; });
        regions.push_back({std::move(g.pixels), g.mean_angle});
    }
    return regions;
}

RectApprox region_rect(const std::vector<PixelCoord>& pixels, const LevelLineField& field, double tolerance) {
    require(!pixels.empty(), "region_rect: empty region");
    return describe(fit_rect(pixels, field, field.angle(pixels[0].x, pixels[0].y)), field, tolerance);
}

double log10_binomial_tail(std::uint64_t n, std::uint64_t k, double p) {
    if (k == 0)
        return 0.0;
    if (k > n)
        return -std::numeric_limits<double>::infinity();
    const double lp = std::log10(p);
    const double lq = std::log10(1.0 - p);
    const double ln10 = std::log(10.0);
    auto term = [&](std::uint64_t i) {
        const double lchoose =
            (std::lgamma(double(n) + 1.0) - std::lgamma(double(i) + 1.0) - std::lgamma(double(n - i) + 1.0)) / ln10;
        return lchoose + double(i) * lp + double(n - i) * lq;
    };
    // log-sum-exp over i = k..n; terms shrink monotonically past the mode
    const double mode = double(n) * p;
    double peak = term(k);
    double acc = 1.0;
    for (std::uint64_t i = k + 1; i <= n; ++i) {
        const double t = term(i);
        if (t > peak) {
            acc = acc * std::pow(10.0, peak - t) + 1.0;
            peak = t;
        } else {
            const double rel = std::pow(10.0, t - peak);
            acc += rel;
            if (double(i) > mode && rel < 1e-17 * acc)
                break;
        }
    }
    return peak + std::log10(acc);
}

double log10_nfa(std::uint64_t n, std::uint64_t k, double p, int width, int height) {
    const double log_tests = 2.5 * (std::log10(double(width)) + std::log10(double(height)));
    return log_tests + log10_binomial_tail(n, k, p);
}

std::optional<LineSegment> rect_and_validate(const LineSupportRegion& region, const LevelLineField& field,
                                             const LsdConfig& cfg) {
    cfg.validate();
    if (region.pixels.size() < 2)
        return std::nullopt;
    const double p = cfg.angle_tolerance / 180.0;
    const double log_eps = std::log10(cfg.nfa_epsilon);
    const double log_tests = 2.5 * (std::log10(double(field.width + 1)) + std::log10(double(field.height + 1)));
    // Even a fully aligned rectangle of this many points cannot reach epsilon.
    if (double(region.pixels.size()) < (log_eps - log_tests) / std::log10(p))
        return std::nullopt;

    std::vector<PixelCoord> pixels = region.pixels;
    const PixelCoord seed = pixels.front();
    Rect rect = fit_rect(pixels, field, region.mean_angle);
    RectApprox info = describe(rect, field, cfg.angle_tolerance);

    if (info.density < cfg.density_threshold) {
        // Tighter tolerance from the orientation spread around the seed,
        // then regrow inside the original region.
        const double seed_angle = field.angle(seed.x, seed.y);
        const double width = rect.w1 - rect.w0;
        double sum = 0.0, sum_sq = 0.0;
        int count = 0;
        for (const auto& q : pixels) {
            if (distance(q.center(), seed.center()) < width) {
                const double d = signed_orientation_difference(field.angle(q.x, q.y), seed_angle);
                sum += d;
                sum_sq += d * d;
                ++count;
            }
        }
        const double mean = count ? sum / count : 0.0;
        const double tau = count ? 2.0 * std::sqrt(std::max(0.0, (sum_sq - 2.0 * mean * sum) / count + mean * mean))
                                 : cfg.angle_tolerance;
        std::vector<std::uint32_t> members;
        members.reserve(pixels.size());
        for (const auto& q : pixels)
            members.push_back(std::uint32_t(q.y) * std::uint32_t(field.width) + std::uint32_t(q.x));
        std::sort(members.begin(), members.end());
        Grid<std::uint8_t> used(field.width, field.height, 0);
        auto inside = [&](int x, int y) {
            return std::binary_search(members.begin(), members.end(),
                                      std::uint32_t(y) * std::uint32_t(field.width) + std::uint32_t(x));
        };
        auto regrown = grow(field, seed, std::min(tau, cfg.angle_tolerance), used, inside);
        if (regrown.pixels.size() < 2)
            return std::nullopt;
        pixels = std::move(regrown.pixels);
        rect = fit_rect(pixels, field, regrown.mean_angle);
        info = describe(rect, field, cfg.angle_tolerance);

        if (info.density < cfg.density_threshold) {
            double radius = std::max(distance(seed.center(), info.end0()), distance(seed.center(), info.end1()));
            while (info.density < cfg.density_threshold) {
                radius *= 0.75;
                std::erase_if(pixels, [&](const PixelCoord& q) { return distance(q.center(), seed.center()) > radius; });
                if (pixels.size() < 2)
                    return std::nullopt;
                rect = fit_rect(pixels, field, regrown.mean_angle);
                info = describe(rect, field, cfg.angle_tolerance);
            }
        }
    }

    Evaluated best = evaluate(rect, field, cfg);
    if (best.log_nfa > log_eps) {
        auto try_rect = [&](const Rect& candidate) {
            if (candidate.w1 - candidate.w0 < 0.5)
                return false;
            Evaluated e = evaluate(candidate, field, cfg);
            if (e.log_nfa < best.log_nfa && e.info.density >= cfg.density_threshold) {
                best = e;
                return true;
            }
            return false;
        };
        for (int n = 0; n < 5; ++n) {
            Rect r = best.rect;
            r.w0 += 0.25;
            r.w1 -= 0.25;
            try_rect(r);
        }
        for (int n = 0; n < 5; ++n) {
            Rect r = best.rect;
            r.w0 += 0.5;
            try_rect(r);
        }
        for (int n = 0; n < 5; ++n) {
            Rect r = best.rect;
            r.w1 -= 0.5;
            try_rect(r);
        }
    }
    if (best.log_nfa > log_eps || best.info.density < cfg.density_threshold)
        return std::nullopt;

    // Field sample (x, y) sits at the center of its 2x2 block.
    const Point2 half{0.5, 0.5};
    LineSegment seg;
    seg.p0 = best.info.end0() + half;
    seg.p1 = best.info.end1() + half;
    if (seg.p0 == seg.p1)
        return std::nullopt;
    seg.support_pixels = std::move(pixels);
    seg.confidence = 0.0;
    return seg;
}

std::vector<LineSegment> confidence_filter(std::vector<LineSegment> segments, const ContourMap& contours,
                                           double alpha) {
    require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
    if (segments.empty())
        return segments;
    double best = 0.0;
    for (auto& s : segments) {
        double c = 0.0;
        for (const auto& q : s.support_pixels)
            if (contours.contains(q.x, q.y))
                c = std::max(c, double(contours(q.x, q.y)));
        s.confidence = std::clamp(c, 0.0, 1.0);
        best = std::max(best, s.confidence);
    }
    const double threshold = (1.0 - alpha) * best;
    std::erase_if(segments, [&](const LineSegment& s) { return s.confidence < threshold; });
    return segments;
}

std::vector<LineSegment> detect_line_segments(const ImageBuffer& image, const LsdConfig& cfg,
                                              const ContourMap* contours) {
    cfg.validate();
    const LevelLineField field = level_line_field(image, cfg.magnitude_threshold);
    std::vector<LineSegment> segments;
    for (const auto& region : grow_regions(field, cfg))
        if (auto seg = rect_and_validate(region, field, cfg))
            segments.push_back(std::move(*seg));
    if (contours) {
        require(contours->width == image.width() && contours->height == image.height(),
                "contour map size does not match the image");
        return confidence_filter(std::move(segments), *contours, cfg.alpha);
    }
    return confidence_filter(std::move(segments), boundary_strength(image), cfg.alpha);
}

} // namespace compose
