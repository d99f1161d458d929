#include "testutil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "textexpand/selfcheck.hpp"

namespace textexpand::testutil {

BitMask brute_force_ohem(const Grid& score, const BitMask& positives, const BitMask& train_mask,
                         int neg_ratio) {
    std::size_t num_pos = 0;
    std::vector<std::size_t> negatives;
    for (std::size_t i = 0; i < positives.size(); ++i) {
        if (!train_mask.bit(i)) continue;
        if (positives.bit(i)) {
            ++num_pos;
        } else {
            negatives.push_back(i);
        }
    }
    if (num_pos == 0) return train_mask;

    std::stable_sort(negatives.begin(), negatives.end(), [&](std::size_t a, std::size_t b) {
        return score.value(a) > score.value(b);
    });
    const std::size_t want =
        std::min(negatives.size(), num_pos * static_cast<std::size_t>(neg_ratio));

    BitMask out(score.width(), score.height(), 0);
    for (std::size_t i = 0; i < positives.size(); ++i) {
        if (positives.bit(i) && train_mask.bit(i)) out.set_bit(i, true);
    }
    for (std::size_t k = 0; k < want; ++k) out.set_bit(negatives[k], true);
    return out;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

namespace {

int match_rest(const std::vector<std::vector<double>>& iou, double threshold, std::size_t det,
               std::vector<bool>& gt_used) {
    if (det == iou.size()) return 0;
    int best = match_rest(iou, threshold, det + 1, gt_used);
    for (std::size_t g = 0; g < iou[det].size(); ++g) {
        if (gt_used[g] || iou[det][g] < threshold) continue;
        gt_used[g] = true;
        best = std::max(best, 1 + match_rest(iou, threshold, det + 1, gt_used));
        gt_used[g] = false;
    }
    return best;
}

}  // namespace

int exhaustive_max_matching(const std::vector<std::vector<double>>& iou, double threshold) {
    if (iou.empty()) return 0;
    std::vector<bool> gt_used(iou[0].size(), false);
    return match_rest(iou, threshold, 0, gt_used);
}

Polygon axis_rectangle(double x0, double y0, double w, double h) {
    return {{x0, y0}, {x0 + w, y0}, {x0 + w, y0 + h}, {x0, y0 + h}};
}

Polygon rotated_rectangle(Point center, double w, double h, double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    const auto corner = [&](double dx, double dy) -> Point {
        return {center.x + dx * c - dy * s, center.y + dx * s + dy * c};
    };
    return {corner(-w / 2, -h / 2), corner(w / 2, -h / 2), corner(w / 2, h / 2),
            corner(-w / 2, h / 2)};
}

Scene make_separation_scene(Rng& rng) {
    Scene scene;
    scene.width = 288;
    scene.height = 288;
    for (int pair = 0; pair < 2; ++pair) {
        const double w = rng.next_range(50.0, 100.0);
        const double h = 10.0 + 2.0 * static_cast<double>(rng.next_below(3));
        const double x0 = 16.0 + 140.0 * pair + rng.next_range(0.0, 20.0);
        const double y0 = rng.next_range(24.0, 288.0 - 2.0 * h - 24.0);
        // Annotations of adjacent lines overlap by one pixel row.
        scene.instances.push_back({axis_rectangle(x0, y0, w, h), false, std::nullopt});
        scene.instances.push_back({axis_rectangle(x0, y0 + h - 1.0, w, h), false, std::nullopt});
        scene.concave.insert(scene.concave.end(), {false, false});
    }
    return scene;
}

Scene make_mixed_scene(Rng& rng) {
    Scene scene;
    scene.width = 384;
    scene.height = 384;
    const double margin = 18.0;

    std::vector<Bounds> placed;
    const auto fits = [&](const Bounds& b) {
        if (b.min_x < margin || b.min_y < margin || b.max_x > scene.width - margin ||
            b.max_y > scene.height - margin) {
            return false;
        }
        for (const Bounds& other : placed) {
            if (b.min_x < other.max_x + margin && other.min_x < b.max_x + margin &&
                b.min_y < other.max_y + margin && other.min_y < b.max_y + margin) {
                return false;
            }
        }
        return true;
    };
    const auto try_place = [&](const std::function<Polygon()>& make, bool concave) {
        for (int attempt = 0; attempt < 80; ++attempt) {
            Polygon poly = make();
            const Bounds b = polygon_bounds(poly);
            if (fits(b)) {
                placed.push_back(b);
                scene.instances.push_back({std::move(poly), false, std::nullopt});
                scene.concave.push_back(concave);
                return;
            }
        }
    };

    try_place(
        [&] {
            return axis_rectangle(rng.next_range(20.0, 240.0), rng.next_range(20.0, 320.0),
                                  rng.next_range(70.0, 130.0), rng.next_range(30.0, 50.0));
        },
        false);
    try_place(
        [&] {
            return random_ribbon_polygon(
                rng, {rng.next_range(100.0, 284.0), rng.next_range(100.0, 284.0)},
                rng.next_range(60.0, 75.0), rng.next_range(16.0, 20.0),
                rng.next_range(1.6, 2.3));
        },
        true);
    try_place(
        [&] {
            return rotated_rectangle({rng.next_range(80.0, 304.0), rng.next_range(80.0, 304.0)},
                                     rng.next_range(80.0, 150.0), rng.next_range(40.0, 60.0),
                                     rng.next_range(0.0, std::numbers::pi));
        },
        false);
    return scene;
}

PipelineRun run_pipeline(const Scene& scene, const RatioSampler& sampler, int iteration,
                         const NoiseConfig& noise, const PostprocessConfig& config,
                         const EvalOptions& eval_options) {
    PipelineRun run;
    run.labels = generate_labels(scene.instances, scene.width, scene.height, sampler, iteration);
    run.predictions = synth_predictions(run.labels, noise);
    run.inference = extract_detections(run.predictions.full, run.predictions.central,
                                       run.predictions.ratio, config);
    run.report = evaluate(run.inference.detections, scene.instances, eval_options);
    return run;
}

double corpus_f_measure(const std::vector<Scene>& scenes, double noise_sigma,
                        std::uint64_t seed) {
    const RatioSampler sampler = RatioSampler::uniform_set(kDefaultRatioSet, seed);
    EvalAccumulator accumulator;
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        NoiseConfig noise;
        noise.prob_noise_sigma = noise_sigma;
        noise.seed = seed + i;
        accumulator.add(run_pipeline(scenes[i], sampler, 0, noise).report);
    }
    return accumulator.summary().f_measure;
}

}  // namespace textexpand::testutil
