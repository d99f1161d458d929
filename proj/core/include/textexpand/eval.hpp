#pragma once

#include <vector>

#include "textexpand/inference.hpp"
#include "textexpand/labels.hpp"

namespace textexpand {

/// Overlap rule for discarding detections that hit a don't-care region.
enum class DontCareMetric {
    kIoU,                        ///< intersection over union (default)
    kIntersectionOverDetection,  ///< ICDAR-script style
};

struct EvalOptions {
    double iou_threshold = 0.5;
    DontCareMetric dontcare_metric = DontCareMetric::kIoU;
    double raster_resolution = 1.0;
};

struct MatchRecord {
    int detection = 0;
    int ground_truth = 0;
    double iou = 0.0;
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    int true_positives = 0;
    int num_detections = 0;  ///< after don't-care removal
    int num_gt = 0;          ///< non-ignore ground-truth instances
    std::vector<MatchRecord> matches;
};

/// IoU-based one-to-one evaluation: detections overlapping an ignore
/// instance above the threshold are discarded outright, the rest are matched
/// greedily by descending IoU. Zero detections give precision 1 and zero
/// non-ignore ground truth gives recall 1, so an empty scene scores F = 1.
EvalReport evaluate(const std::vector<Detection>& detections,
                    const std::vector<TextInstance>& ground_truth,
                    const EvalOptions& options = {});

EvalReport evaluate(const std::vector<Detection>& detections,
                    const std::vector<TextInstance>& ground_truth, double iou_threshold);

/// Corpus-level reduction over per-image counts.
class EvalAccumulator {
public:
    void add(const EvalReport& report);
    EvalReport summary() const;

private:
    int tp_ = 0;
    int detections_ = 0;
    int gt_ = 0;
};

}  // namespace textexpand
