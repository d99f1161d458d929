#include "textexpand/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace textexpand {
namespace {

void require_same_shape(int wa, int ha, int wb, int hb, const char* what) {
    if (wa != wb || ha != hb) {
        throw std::invalid_argument(std::string(what) + ": shape mismatch (" +
                                    std::to_string(wa) + "x" + std::to_string(ha) + " vs " +
                                    std::to_string(wb) + "x" + std::to_string(hb) + ")");
    }
}

}  // namespace

void LossWeights::validate() const {
    if (complete < 0.0 || central < 0.0 || ratio < 0.0) {
        throw std::invalid_argument("loss weights must be non-negative");
    }
    const double sum = complete + central + ratio;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("loss weights must sum to 1, got " + std::to_string(sum));
    }
}

double dice(const Grid& prediction, const Grid& target, const BitMask& mask) {
    require_same_shape(prediction.width(), prediction.height(), target.width(), target.height(),
                       "dice");
    require_same_shape(prediction.width(), prediction.height(), mask.width(), mask.height(),
                       "dice");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask.bit(i)) continue;
        const double r = prediction.value(i);
        const double g = target.value(i);
        num += r * g;
        den += r * r + g * g;
    }
    return (2.0 * num + kDiceEpsilon) / (den + kDiceEpsilon);
}

Grid dice_grad(const Grid& prediction, const Grid& target, const BitMask& mask) {
    require_same_shape(prediction.width(), prediction.height(), target.width(), target.height(),
                       "dice_grad");
    require_same_shape(prediction.width(), prediction.height(), mask.width(), mask.height(),
                       "dice_grad");
    double num = kDiceEpsilon, den = kDiceEpsilon;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask.bit(i)) continue;
        const double r = prediction.value(i);
        const double g = target.value(i);
        num += 2.0 * r * g;
        den += r * r + g * g;
    }
    Grid out(prediction.width(), prediction.height(), 0.0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask.bit(i)) continue;
        const double r = prediction.value(i);
        const double g = target.value(i);
        out.set_value(i, (2.0 * g * den - 2.0 * r * num) / (den * den));
    }
    return out;
}

BitMask ohem_mask(const Grid& score, const BitMask& positives, const BitMask& train_mask,
                  int neg_ratio) {
    require_same_shape(score.width(), score.height(), positives.width(), positives.height(),
                       "ohem_mask");
    require_same_shape(score.width(), score.height(), train_mask.width(), train_mask.height(),
                       "ohem_mask");
    if (neg_ratio < 0) throw std::invalid_argument("neg_ratio must be >= 0");

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

    const std::size_t want =
        std::min(negatives.size(), num_pos * static_cast<std::size_t>(neg_ratio));
    std::partial_sort(negatives.begin(), negatives.begin() + static_cast<std::ptrdiff_t>(want),
                      negatives.end(), [&](std::size_t a, std::size_t b) {
                          const double sa = score.value(a);
                          const double sb = score.value(b);
                          return sa > sb || (sa == sb && a < b);
                      });

    BitMask out(score.width(), score.height(), 0);
    for (std::size_t i = 0; i < positives.size(); ++i) {
        if (positives.bit(i) && train_mask.bit(i)) out.set_bit(i, true);
    }
    for (std::size_t k = 0; k < want; ++k) out.set_bit(negatives[k], true);
    return out;
}

double loss_complete(const Grid& prediction, const BitMask& target, const BitMask& train_mask,
                     int neg_ratio) {
    const BitMask selection = ohem_mask(prediction, target, train_mask, neg_ratio);
    return 1.0 - dice(prediction, to_grid(target), selection);
}

double loss_central(const Grid& prediction, const BitMask& target,
                    const Grid& complete_prediction, const BitMask& train_mask) {
    require_same_shape(prediction.width(), prediction.height(), complete_prediction.width(),
                       complete_prediction.height(), "loss_central");
    require_same_shape(prediction.width(), prediction.height(), train_mask.width(),
                       train_mask.height(), "loss_central");
    BitMask w(prediction.width(), prediction.height(), 0);
    std::size_t selected = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (complete_prediction.value(i) >= 0.5 && train_mask.bit(i)) {
            w.set_bit(i, true);
            ++selected;
        }
    }
    if (selected == 0) return 0.0;
    return 1.0 - dice(prediction, to_grid(target), w);
}

double smooth_l1(double x) {
    const double ax = std::abs(x);
    return ax < 1.0 ? 0.5 * x * x : ax - 0.5;
}

double smooth_l1_grad(double x) {
    if (std::abs(x) < 1.0) return x;
    return x > 0.0 ? 1.0 : -1.0;
}

double loss_ratio(const Grid& prediction, const Grid& target, const BitMask& central_target,
                  const BitMask& train_mask, bool mean_normalized) {
    require_same_shape(prediction.width(), prediction.height(), target.width(), target.height(),
                       "loss_ratio");
    require_same_shape(prediction.width(), prediction.height(), central_target.width(),
                       central_target.height(), "loss_ratio");
    require_same_shape(prediction.width(), prediction.height(), train_mask.width(),
                       train_mask.height(), "loss_ratio");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < central_target.size(); ++i) {
        if (!central_target.bit(i) || !train_mask.bit(i)) continue;
        sum += smooth_l1(prediction.value(i) - target.value(i));
        ++n;
    }
    if (n == 0) return 0.0;
    return mean_normalized ? sum / static_cast<double>(n) : sum;
}

LossReport total_loss(double l_complete, double l_central, double l_ratio,
                      const LossWeights& weights, std::size_t ohem_selected) {
    weights.validate();
    LossReport report;
    report.complete = l_complete;
    report.central = l_central;
    report.ratio = l_ratio;
    report.total = weights.complete * l_complete + weights.central * l_central +
                   weights.ratio * l_ratio;
    report.ohem_selected = ohem_selected;
    return report;
}

}  // namespace textexpand
