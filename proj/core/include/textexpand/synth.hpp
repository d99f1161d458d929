#pragma once

#include <cstdint>

#include "textexpand/labels.hpp"
#include "textexpand/raster.hpp"

namespace textexpand {

/// Controls for corrupting ground truth into network-like predictions.
struct NoiseConfig {
    double prob_noise_sigma = 0.0;   ///< gaussian stddev on probability maps
    double ratio_noise_sigma = 0.0;  ///< gaussian stddev on the ratio map, pixels
    int boundary_jitter = 0;         ///< width of the random erosion/dilation band
    std::uint64_t seed = 0;
};

struct SynthPredictions {
    Grid full;
    Grid central;
    Grid ratio;
};

/// Produces prediction grids from a LabelSet. With zero noise the outputs
/// equal the masks as 0/1 grids and the ratio map exactly. Boundary jitter
/// toggles pixels within `boundary_jitter` of a mask edge with probability
/// one half; gaussian noise on the probability maps is reflected at the
/// [0, 1] bounds (so deviations around hard 0/1 values follow the folded
/// magnitude |N(0, sigma)|) and the ratio map is clamped to >= 0.
/// Deterministic for a given seed.
SynthPredictions synth_predictions(const LabelSet& labels, const NoiseConfig& noise = {});

}  // namespace textexpand
