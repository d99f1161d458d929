#pragma once

#include "textexpand/raster.hpp"

namespace textexpand {

/// Additive smoothing in the dice numerator and denominator so empty masks
/// are well defined (dice of an empty selection is 1).
inline constexpr double kDiceEpsilon = 1e-6;

/// Task weights for the total loss; must be non-negative and sum to 1.
struct LossWeights {
    double complete = 0.5;
    double central = 0.25;
    double ratio = 0.25;

    void validate() const;
};

struct LossReport {
    double complete = 0.0;
    double central = 0.0;
    double ratio = 0.0;
    double total = 0.0;
    std::size_t ohem_selected = 0;
};

/// D = (2 sum(R*G) + eps) / (sum(R^2) + sum(G^2) + eps) over masked pixels.
/// Symmetric in R and G; returns 1 when the mask selects no pixel.
double dice(const Grid& prediction, const Grid& target, const BitMask& mask);

/// dD/dR per pixel, zero outside the mask.
Grid dice_grad(const Grid& prediction, const Grid& target, const BitMask& mask);

/// Online hard example mining: all positive pixels plus the neg_ratio *
/// |positives| highest-scoring negatives (ties broken by raster order).
/// With no positives the whole training mask is returned.
BitMask ohem_mask(const Grid& score, const BitMask& positives, const BitMask& train_mask,
                  int neg_ratio = 3);

/// 1 - dice over the OHEM selection.
double loss_complete(const Grid& prediction, const BitMask& target, const BitMask& train_mask,
                     int neg_ratio = 3);

/// 1 - dice over W = (complete prediction >= 0.5) AND train_mask; 0 when W
/// is empty (central supervision only applies where text is predicted).
double loss_central(const Grid& prediction, const BitMask& target,
                    const Grid& complete_prediction, const BitMask& train_mask);

/// 0.5 x^2 for |x| < 1, |x| - 0.5 otherwise.
double smooth_l1(double x);
double smooth_l1_grad(double x);

/// Sum of smooth_l1(P - Q) over pixels with target central mask and training
/// eligibility; `mean_normalized` divides by the pixel count instead.
double loss_ratio(const Grid& prediction, const Grid& target, const BitMask& central_target,
                  const BitMask& train_mask, bool mean_normalized = false);

/// total = w.complete * l_c + w.central * l_s + w.ratio * l_d.
LossReport total_loss(double l_complete, double l_central, double l_ratio,
                      const LossWeights& weights = {}, std::size_t ohem_selected = 0);

}  // namespace textexpand
