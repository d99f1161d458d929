#include "textexpand/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textexpand/rng.hpp"

namespace textexpand {
namespace {

double fold_into_unit(double v) {
    if (v < 0.0) v = -v;
    if (v > 1.0) v = 2.0 - v;
    return std::clamp(v, 0.0, 1.0);
}

void jitter_boundary(BitMask& mask, int band, Rng& rng) {
    const Grid dist_set = distance_transform(mask);
    BitMask inverse(mask.width(), mask.height(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i) inverse.set_bit(i, !mask.bit(i));
    const Grid dist_unset = distance_transform(inverse);

    for (std::size_t i = 0; i < mask.size(); ++i) {
        const double to_edge = mask.bit(i) ? dist_unset.value(i) : dist_set.value(i);
        if (to_edge <= static_cast<double>(band) && rng.next_double() < 0.5) {
            mask.set_bit(i, !mask.bit(i));
        }
    }
}

void add_prob_noise(Grid& grid, double sigma, Rng& rng) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.set_value(i, fold_into_unit(grid.value(i) + sigma * rng.next_gaussian()));
    }
}

}  // namespace

SynthPredictions synth_predictions(const LabelSet& labels, const NoiseConfig& noise) {
    if (noise.prob_noise_sigma < 0.0 || noise.ratio_noise_sigma < 0.0 ||
        noise.boundary_jitter < 0) {
        throw std::invalid_argument("noise parameters must be non-negative");
    }
    Rng rng(noise.seed);

    BitMask full_mask = labels.full_mask;
    BitMask central_mask = labels.central_mask;
    if (noise.boundary_jitter > 0) {
        jitter_boundary(full_mask, noise.boundary_jitter, rng);
        jitter_boundary(central_mask, noise.boundary_jitter, rng);
    }

    SynthPredictions out{to_grid(full_mask), to_grid(central_mask), labels.ratio_map};
    if (noise.prob_noise_sigma > 0.0) {
        add_prob_noise(out.full, noise.prob_noise_sigma, rng);
        add_prob_noise(out.central, noise.prob_noise_sigma, rng);
    }
    if (noise.ratio_noise_sigma > 0.0) {
        for (std::size_t i = 0; i < out.ratio.size(); ++i) {
            out.ratio.set_value(
                i, std::max(0.0, out.ratio.value(i) + noise.ratio_noise_sigma * rng.next_gaussian()));
        }
    }
    return out;
}

}  // namespace textexpand
