#include "textexpand/eval.hpp"

#include <algorithm>

namespace textexpand {
namespace {

double harmonic_f(double precision, double recall) {
    const double sum = precision + recall;
    return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

}  // namespace

EvalReport evaluate(const std::vector<Detection>& detections,
                    const std::vector<TextInstance>& ground_truth,
                    const EvalOptions& options) {
    std::vector<int> real_gt;
    std::vector<int> ignore_gt;
    for (std::size_t i = 0; i < ground_truth.size(); ++i) {
        (ground_truth[i].ignore ? ignore_gt : real_gt).push_back(static_cast<int>(i));
    }

    // Detections landing on a don't-care region drop out of the evaluation.
    std::vector<int> kept;
    for (std::size_t d = 0; d < detections.size(); ++d) {
        bool discard = false;
        for (int g : ignore_gt) {
            const OverlapCounts counts = polygon_overlap(
                detections[d].polygon, ground_truth[static_cast<std::size_t>(g)].polygon,
                options.raster_resolution);
            double overlap = 0.0;
            if (options.dontcare_metric == DontCareMetric::kIoU) {
                if (counts.union_ > 0) {
                    overlap = static_cast<double>(counts.intersection) /
                              static_cast<double>(counts.union_);
                }
            } else if (counts.area_a > 0) {
                overlap = static_cast<double>(counts.intersection) /
                          static_cast<double>(counts.area_a);
            }
            if (overlap >= options.iou_threshold) {
                discard = true;
                break;
            }
        }
        if (!discard) kept.push_back(static_cast<int>(d));
    }

    struct Pair {
        double iou;
        int det;
        int gt;
    };
    std::vector<Pair> pairs;
    for (int d : kept) {
        for (int g : real_gt) {
            const double iou =
                polygon_iou(detections[static_cast<std::size_t>(d)].polygon,
                            ground_truth[static_cast<std::size_t>(g)].polygon,
                            options.raster_resolution);
            if (iou >= options.iou_threshold) pairs.push_back({iou, d, g});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.det != b.det) return a.det < b.det;
        return a.gt < b.gt;
    });

    EvalReport report;
    std::vector<bool> det_used(detections.size(), false);
    std::vector<bool> gt_used(ground_truth.size(), false);
    for (const Pair& p : pairs) {
        if (det_used[static_cast<std::size_t>(p.det)] || gt_used[static_cast<std::size_t>(p.gt)])
            continue;
        det_used[static_cast<std::size_t>(p.det)] = true;
        gt_used[static_cast<std::size_t>(p.gt)] = true;
        report.matches.push_back({p.det, p.gt, p.iou});
        ++report.true_positives;
    }

    report.num_detections = static_cast<int>(kept.size());
    report.num_gt = static_cast<int>(real_gt.size());
    report.precision = report.num_detections > 0
                           ? static_cast<double>(report.true_positives) / report.num_detections
                           : 1.0;
    report.recall = report.num_gt > 0
                        ? static_cast<double>(report.true_positives) / report.num_gt
                        : 1.0;
    report.f_measure = harmonic_f(report.precision, report.recall);
    return report;
}

EvalReport evaluate(const std::vector<Detection>& detections,
                    const std::vector<TextInstance>& ground_truth, double iou_threshold) {
    EvalOptions options;
    options.iou_threshold = iou_threshold;
    return evaluate(detections, ground_truth, options);
}

void EvalAccumulator::add(const EvalReport& report) {
    tp_ += report.true_positives;
    detections_ += report.num_detections;
    gt_ += report.num_gt;
}

EvalReport EvalAccumulator::summary() const {
    EvalReport report;
    report.true_positives = tp_;
    report.num_detections = detections_;
    report.num_gt = gt_;
    report.precision = detections_ > 0 ? static_cast<double>(tp_) / detections_ : 1.0;
    report.recall = gt_ > 0 ? static_cast<double>(tp_) / gt_ : 1.0;
    report.f_measure = harmonic_f(report.precision, report.recall);
    return report;
}

}  // namespace textexpand
