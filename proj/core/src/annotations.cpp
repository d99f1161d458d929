#include "textexpand/annotations.hpp"

#include <charconv>
#include <string>

#include <json.hpp>

#include "textexpand/errors.hpp"

namespace textexpand {
namespace {

using nlohmann::json;

double parse_coordinate(std::string_view token, std::size_t line_no) {
    // Trim surrounding spaces; from_chars demands a clean token.
    std::size_t b = token.find_first_not_of(" \t");
    std::size_t e = token.find_last_not_of(" \t");
    if (b == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": empty coordinate");
    }
    token = token.substr(b, e - b + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric coordinate '" +
                         std::string(token) + "'");
    }
    return value;
}

json must_get(const json& node, const char* key, const std::string& path) {
    if (!node.contains(key)) {
        throw ParseError(path + ": missing key '" + key + "'");
    }
    return node.at(key);
}

Polygon points_from_json(const json& points, const std::string& path) {
    if (!points.is_array() || points.size() < 3) {
        throw ParseError(path + ": needs an array of at least 3 points");
    }
    Polygon poly;
    poly.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const json& pt = points[i];
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
            throw ParseError(path + "[" + std::to_string(i) + "]: expected [x, y]");
        }
        poly.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return poly;
}

json polygon_to_json(const Polygon& poly) {
    json points = json::array();
    for (const Point& p : poly) points.push_back(json::array({p.x, p.y}));
    return points;
}

json parse_document(std::string_view text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw ParseError(std::string(what) + ": invalid JSON");
    }
    return doc;
}

}  // namespace

AnnotationFile parse_icdar15(std::string_view text, std::string image_id) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }

    AnnotationFile out;
    out.image_id = std::move(image_id);
    out.source_format = "icdar15";

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() < 8) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 8 coordinates, got " +
                             std::to_string(fields.size()) + " fields");
        }

        TextInstance inst;
        for (int k = 0; k < 4; ++k) {
            inst.polygon.push_back({parse_coordinate(fields[2 * k], line_no),
                                    parse_coordinate(fields[2 * k + 1], line_no)});
        }
        // The transcription may itself contain commas; rejoin the remainder.
        std::string transcription;
        for (std::size_t k = 8; k < fields.size(); ++k) {
            if (k > 8) transcription += ',';
            transcription += std::string(fields[k]);
        }
        inst.ignore = transcription == "###";
        if (!transcription.empty()) inst.transcription = std::move(transcription);
        out.instances.push_back(std::move(inst));
    }
    return out;
}

AnnotationFile parse_polygon_json(std::string_view text) {
    const json doc = parse_document(text, "annotation");
    if (!doc.is_object()) throw ParseError("annotation: expected a JSON object");

    AnnotationFile out;
    out.source_format = "json";
    if (doc.contains("image_id")) {
        if (!doc["image_id"].is_string()) throw ParseError("image_id: expected a string");
        out.image_id = doc["image_id"].get<std::string>();
    }

    const json instances = must_get(doc, "instances", "annotation");
    if (!instances.is_array()) throw ParseError("instances: expected an array");
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const std::string path = "instances[" + std::to_string(i) + "]";
        const json& node = instances[i];
        if (!node.is_object()) throw ParseError(path + ": expected an object");

        TextInstance inst;
        inst.polygon = points_from_json(must_get(node, "points", path), path + ".points");
        if (node.contains("ignore")) {
            if (!node["ignore"].is_boolean()) throw ParseError(path + ".ignore: expected a bool");
            inst.ignore = node["ignore"].get<bool>();
        }
        if (node.contains("transcription") && !node["transcription"].is_null()) {
            if (!node["transcription"].is_string()) {
                throw ParseError(path + ".transcription: expected a string or null");
            }
            inst.transcription = node["transcription"].get<std::string>();
        }
        out.instances.push_back(std::move(inst));
    }
    return out;
}

std::string to_canonical_json(const AnnotationFile& annotation) {
    json doc;
    doc["image_id"] = annotation.image_id;
    json instances = json::array();
    for (const TextInstance& inst : annotation.instances) {
        json node;
        node["points"] = polygon_to_json(inst.polygon);
        node["ignore"] = inst.ignore;
        node["transcription"] =
            inst.transcription.has_value() ? json(*inst.transcription) : json(nullptr);
        instances.push_back(std::move(node));
    }
    doc["instances"] = std::move(instances);
    return doc.dump(2) + "\n";
}

std::string detections_to_json(std::string_view image_id,
                               const std::vector<Detection>& detections) {
    json doc;
    doc["image_id"] = std::string(image_id);
    json items = json::array();
    for (const Detection& det : detections) {
        json node;
        node["points"] = polygon_to_json(det.polygon);
        node["score"] = det.score;
        items.push_back(std::move(node));
    }
    doc["detections"] = std::move(items);
    return doc.dump(2) + "\n";
}

std::pair<std::string, std::vector<Detection>> detections_from_json(std::string_view text) {
    const json doc = parse_document(text, "detections");
    if (!doc.is_object()) throw ParseError("detections: expected a JSON object");

    std::string image_id;
    if (doc.contains("image_id") && doc["image_id"].is_string()) {
        image_id = doc["image_id"].get<std::string>();
    }
    std::vector<Detection> detections;
    const json items = must_get(doc, "detections", "detections");
    if (!items.is_array()) throw ParseError("detections: expected an array");
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::string path = "detections[" + std::to_string(i) + "]";
        const json& node = items[i];
        Detection det;
        det.polygon = points_from_json(must_get(node, "points", path), path + ".points");
        if (node.contains("score")) {
            if (!node["score"].is_number()) throw ParseError(path + ".score: expected a number");
            det.score = node["score"].get<double>();
        }
        detections.push_back(std::move(det));
    }
    return {std::move(image_id), std::move(detections)};
}

std::string eval_report_to_json(const EvalReport& report) {
    json doc;
    doc["precision"] = report.precision;
    doc["recall"] = report.recall;
    doc["f_measure"] = report.f_measure;
    doc["true_positives"] = report.true_positives;
    doc["num_detections"] = report.num_detections;
    doc["num_gt"] = report.num_gt;
    json matches = json::array();
    for (const MatchRecord& m : report.matches) {
        json node;
        node["detection"] = m.detection;
        node["ground_truth"] = m.ground_truth;
        node["iou"] = m.iou;
        matches.push_back(std::move(node));
    }
    doc["matches"] = std::move(matches);
    return doc.dump(2) + "\n";
}

std::string instance_records_to_json(std::string_view image_id,
                                     const std::vector<InstanceRecord>& records) {
    json doc;
    doc["image_id"] = std::string(image_id);
    json items = json::array();
    for (const InstanceRecord& rec : records) {
        json node;
        node["index"] = rec.index;
        node["ratio"] = rec.ratio;
        node["distance"] = rec.distance;
        node["collapsed"] = rec.collapsed;
        items.push_back(std::move(node));
    }
    doc["instances"] = std::move(items);
    return doc.dump(2) + "\n";
}

PostprocessConfig postprocess_config_from_json(std::string_view text) {
    const json doc = parse_document(text, "config");
    PostprocessConfig config;
    if (!doc.is_object() || !doc.contains("postprocess")) return config;
    const json& node = doc["postprocess"];
    if (!node.is_object()) throw ParseError("postprocess: expected an object");

    if (node.contains("central_threshold")) config.central_threshold = node["central_threshold"];
    if (node.contains("full_threshold")) config.full_threshold = node["full_threshold"];
    if (node.contains("min_component_area")) config.min_component_area = node["min_component_area"];
    if (node.contains("min_score")) config.min_score = node["min_score"];
    if (node.contains("quad_mode")) config.quad_mode = node["quad_mode"];
    if (node.contains("gate_by_full")) config.gate_by_full = node["gate_by_full"];
    if (node.contains("ratio_aggregation")) {
        const std::string mode = node["ratio_aggregation"];
        if (mode == "mean") {
            config.ratio_aggregation = RatioAggregation::kMean;
        } else if (mode == "median") {
            config.ratio_aggregation = RatioAggregation::kMedian;
        } else {
            throw ParseError("postprocess.ratio_aggregation: expected 'mean' or 'median'");
        }
    }
    config.validate();
    return config;
}

LossWeights loss_weights_from_json(std::string_view text) {
    const json doc = parse_document(text, "config");
    LossWeights weights;
    if (!doc.is_object() || !doc.contains("loss_weights")) return weights;
    const json& node = doc["loss_weights"];
    if (!node.is_object()) throw ParseError("loss_weights: expected an object");
    if (node.contains("complete")) weights.complete = node["complete"];
    if (node.contains("central")) weights.central = node["central"];
    if (node.contains("ratio")) weights.ratio = node["ratio"];
    weights.validate();
    return weights;
}

}  // namespace textexpand
