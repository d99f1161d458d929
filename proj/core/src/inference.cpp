#include "textexpand/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textexpand/errors.hpp"

namespace textexpand {
namespace {

double aggregate_ratio(std::vector<double>& values, RatioAggregation mode) {
    if (values.empty()) return 0.0;
    if (mode == RatioAggregation::kMean) {
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Polygon clip_to_image(Polygon poly, int width, int height) {
    for (Point& p : poly) {
        p.x = std::clamp(p.x, 0.0, static_cast<double>(width));
        p.y = std::clamp(p.y, 0.0, static_cast<double>(height));
    }
    // Clamping can stack vertices on the border; drop exact repeats.
    Polygon out;
    out.reserve(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point prev = poly[(i + poly.size() - 1) % poly.size()];
        if (poly[i].x == prev.x && poly[i].y == prev.y) continue;
        out.push_back(poly[i]);
    }
    return out;
}

}  // namespace

void PostprocessConfig::validate() const {
    if (!(central_threshold > 0.0) || !(central_threshold < 1.0) ||
        !(full_threshold > 0.0) || !(full_threshold < 1.0)) {
        throw std::invalid_argument("thresholds must lie in (0, 1)");
    }
    if (min_component_area < 1) {
        throw std::invalid_argument("min_component_area must be >= 1");
    }
    if (min_score < 0.0 || min_score > 1.0) {
        throw std::invalid_argument("min_score must lie in [0, 1]");
    }
}

InferenceResult extract_detections(const Grid& full, const Grid& central, const Grid& ratio,
                                   const PostprocessConfig& config) {
    config.validate();
    const int w = full.width();
    const int h = full.height();
    if (central.width() != w || central.height() != h || ratio.width() != w ||
        ratio.height() != h) {
        throw std::invalid_argument("extract_detections: prediction grids differ in shape");
    }

    BitMask candidates(w, h, 0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const bool central_on = central.value(i) >= config.central_threshold;
        const bool full_on = !config.gate_by_full || full.value(i) >= config.full_threshold;
        candidates.set_bit(i, central_on && full_on);
    }

    const LabelGrid components = connected_components(candidates, 8);

    InferenceResult result;
    result.diagnostics.components_total = components.count;

    std::vector<int> areas(static_cast<std::size_t>(components.count) + 1, 0);
    for (std::int32_t lbl : components.labels) {
        if (lbl > 0) ++areas[static_cast<std::size_t>(lbl)];
    }

    std::vector<double> ratios;
    for (int label = 1; label <= components.count; ++label) {
        ComponentRecord rec;
        rec.label = label;
        rec.area = areas[static_cast<std::size_t>(label)];
        if (rec.area < config.min_component_area) {
            rec.drop_reason = "area";
            ++result.diagnostics.components_area_filtered;
            result.diagnostics.components.push_back(rec);
            continue;
        }

        ratios.clear();
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (components.at(x, y) == label) ratios.push_back(ratio.at(x, y));
            }
        }
        rec.offset_distance = aggregate_ratio(ratios, config.ratio_aggregation);

        Polygon contour = trace_contour(components, label);
        if (config.quad_mode) contour = min_area_rect(contour);

        Polygon detection_poly;
        try {
            detection_poly = expand_polygon(contour, rec.offset_distance);
        } catch (const DegenerateError&) {
            rec.drop_reason = "degenerate";
            result.diagnostics.components.push_back(rec);
            continue;
        }
        detection_poly = clip_to_image(std::move(detection_poly), w, h);
        if (detection_poly.size() < 3) {
            rec.drop_reason = "degenerate";
            result.diagnostics.components.push_back(rec);
            continue;
        }

        const BitMask det_mask = rasterize_polygon(detection_poly, w, h);
        double score_sum = 0.0;
        std::size_t score_n = 0;
        for (std::size_t i = 0; i < det_mask.size(); ++i) {
            if (det_mask.bit(i)) {
                score_sum += full.value(i);
                ++score_n;
            }
        }
        rec.score = score_n > 0 ? score_sum / static_cast<double>(score_n) : 0.0;
        if (rec.score < config.min_score) {
            rec.drop_reason = "score";
            ++result.diagnostics.components_score_filtered;
            result.diagnostics.components.push_back(rec);
            continue;
        }

        rec.kept = true;
        result.diagnostics.components.push_back(rec);
        result.detections.push_back({std::move(detection_poly), rec.score});
    }

    // Sort by score descending, tracking where each component's detection
    // lands so the diagnostics stay navigable.
    std::vector<std::size_t> order(result.detections.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return result.detections[a].score > result.detections[b].score;
    });
    std::vector<Detection> sorted;
    sorted.reserve(result.detections.size());
    std::vector<int> new_index(order.size(), -1);
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        new_index[order[rank]] = static_cast<int>(rank);
        sorted.push_back(std::move(result.detections[order[rank]]));
    }
    result.detections = std::move(sorted);
    int running = 0;
    for (ComponentRecord& rec : result.diagnostics.components) {
        if (rec.kept) rec.detection_index = new_index[static_cast<std::size_t>(running++)];
    }
    return result;
}

}  // namespace textexpand
