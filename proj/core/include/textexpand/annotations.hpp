#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "textexpand/eval.hpp"
#include "textexpand/inference.hpp"
#include "textexpand/labels.hpp"
#include "textexpand/losses.hpp"

namespace textexpand {

struct AnnotationFile {
    std::string image_id;
    std::vector<TextInstance> instances;
    std::string source_format;  ///< "icdar15" or "json"
};

/// ICDAR 2015 ground truth: one instance per line as
/// "x1,y1,x2,y2,x3,y3,x4,y4,transcription", optionally BOM-prefixed, CRLF
/// tolerated. A transcription of "###" marks the instance don't-care.
/// Throws ParseError (naming the line) on short or non-numeric lines.
AnnotationFile parse_icdar15(std::string_view text, std::string image_id = "");

/// Canonical annotation JSON:
///   {"image_id": str, "instances": [{"points": [[x, y], ...],
///     "ignore": bool, "transcription": str|null}]}
/// Instances need at least 3 points. Throws ParseError naming the JSON path.
AnnotationFile parse_polygon_json(std::string_view text);

std::string to_canonical_json(const AnnotationFile& annotation);

std::string detections_to_json(std::string_view image_id,
                               const std::vector<Detection>& detections);
std::pair<std::string, std::vector<Detection>> detections_from_json(std::string_view text);

std::string eval_report_to_json(const EvalReport& report);

std::string instance_records_to_json(std::string_view image_id,
                                     const std::vector<InstanceRecord>& records);

/// Optional config document for the CLI:
///   {"postprocess": {"central_threshold": ..., "full_threshold": ...,
///     "min_component_area": ..., "min_score": ..., "quad_mode": ...,
///     "ratio_aggregation": "mean"|"median", "gate_by_full": ...},
///    "loss_weights": {"complete": ..., "central": ..., "ratio": ...}}
/// Absent keys keep their defaults.
PostprocessConfig postprocess_config_from_json(std::string_view text);
LossWeights loss_weights_from_json(std::string_view text);

}  // namespace textexpand
