#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "textexpand/eval.hpp"
#include "textexpand/inference.hpp"
#include "textexpand/labels.hpp"
#include "textexpand/raster.hpp"
#include "textexpand/rng.hpp"
#include "textexpand/synth.hpp"

namespace textexpand::testutil {

// ---- independent oracles -------------------------------------------------

/// Full-sort OHEM selection: positives plus the neg_ratio * |positives|
/// highest-scoring negatives, ties by raster order.
BitMask brute_force_ohem(const Grid& score, const BitMask& positives, const BitMask& train_mask,
                         int neg_ratio);

/// Central finite difference of f at x.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Maximum true-positive count over all one-to-one assignments with
/// IoU >= threshold (exhaustive; fine for up to ~6x6 cases).
int exhaustive_max_matching(const std::vector<std::vector<double>>& iou, double threshold);

// ---- synthetic scenes ----------------------------------------------------

struct Scene {
    int width = 0;
    int height = 0;
    std::vector<TextInstance> instances;
    std::vector<bool> concave;  ///< parallel to instances
};

Polygon axis_rectangle(double x0, double y0, double w, double h);

Polygon rotated_rectangle(Point center, double w, double h, double angle_rad);

/// Two pairs of stacked rectangles whose annotations overlap by one pixel
/// row, the dense-adjacent-lines setup: full masks merge per pair while
/// central regions stay separable.
Scene make_separation_scene(Rng& rng);

/// Mix of an axis-aligned rectangle, a rotated quad and a concave 14-point
/// ribbon, placed without overlap.
Scene make_mixed_scene(Rng& rng);

// ---- pipeline ------------------------------------------------------------

struct PipelineRun {
    LabelSet labels;
    SynthPredictions predictions;
    InferenceResult inference;
    EvalReport report;
};

/// labels -> synth -> extract_detections -> evaluate on one scene.
PipelineRun run_pipeline(const Scene& scene, const RatioSampler& sampler, int iteration,
                         const NoiseConfig& noise, const PostprocessConfig& config = {},
                         const EvalOptions& eval_options = {});

/// Mean F-measure of the mixed-scene corpus under the given noise sigma.
double corpus_f_measure(const std::vector<Scene>& scenes, double noise_sigma,
                        std::uint64_t seed);

}  // namespace textexpand::testutil
