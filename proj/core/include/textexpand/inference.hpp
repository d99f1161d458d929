#pragma once

#include <string>
#include <vector>

#include "textexpand/geometry.hpp"
#include "textexpand/raster.hpp"

namespace textexpand {

enum class RatioAggregation { kMean, kMedian };

struct PostprocessConfig {
    double central_threshold = 0.5;
    double full_threshold = 0.5;
    int min_component_area = 16;
    double min_score = 0.6;
    bool quad_mode = false;  ///< min-area rectangle instead of the traced contour
    RatioAggregation ratio_aggregation = RatioAggregation::kMean;
    bool gate_by_full = true;  ///< require full >= full_threshold for central pixels

    void validate() const;
};

struct Detection {
    Polygon polygon;
    double score = 0.0;
};

struct ComponentRecord {
    int label = 0;
    int area = 0;
    double offset_distance = 0.0;
    double score = 0.0;
    bool kept = false;
    int detection_index = -1;  ///< index into InferenceResult::detections when kept
    std::string drop_reason;   ///< empty when kept
};

struct InferenceDiagnostics {
    int components_total = 0;
    int components_area_filtered = 0;
    int components_score_filtered = 0;
    std::vector<ComponentRecord> components;
};

struct InferenceResult {
    std::vector<Detection> detections;  ///< sorted by score, descending
    InferenceDiagnostics diagnostics;
};

/// Turns the three prediction maps into detection polygons: binarize the
/// central map (gated by the full map), label 8-connected components, drop
/// small ones, trace each component's boundary (or take its min-area
/// rectangle in quad mode), expand it by the aggregated ratio-map value, clip
/// to the image, and score by the mean full-map probability over the
/// detection polygon.
InferenceResult extract_detections(const Grid& full, const Grid& central, const Grid& ratio,
                                   const PostprocessConfig& config = {});

}  // namespace textexpand
