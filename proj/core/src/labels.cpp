#include "textexpand/labels.hpp"

#include <stdexcept>

#include "textexpand/errors.hpp"
#include "textexpand/rng.hpp"

namespace textexpand {

RatioSampler RatioSampler::fixed_ratio(double r) {
    if (!(r > 0.0) || r > 1.0) {
        throw std::invalid_argument("fixed ratio must be in (0, 1]");
    }
    RatioSampler s;
    s.mode = Mode::kFixed;
    s.fixed = r;
    return s;
}

RatioSampler RatioSampler::uniform_set(std::vector<double> ratios, std::uint64_t seed) {
    if (ratios.empty()) {
        throw std::invalid_argument("ratio set must not be empty");
    }
    for (double r : ratios) {
        if (!(r > 0.0) || r > 1.0) {
            throw std::invalid_argument("ratios must be in (0, 1]");
        }
    }
    RatioSampler s;
    s.mode = Mode::kUniformSet;
    s.ratio_set = std::move(ratios);
    s.seed = seed;
    return s;
}

double sample_ratio(const RatioSampler& sampler, int instance_index, int iteration) {
    if (sampler.mode == RatioSampler::Mode::kFixed) return sampler.fixed;
    if (sampler.ratio_set.empty()) {
        throw std::invalid_argument("ratio sampler has an empty ratio set");
    }
    // Keyed draw: hash chain over (seed, instance, iteration).
    std::uint64_t key = Rng::mix(sampler.seed ^ 0x6a09e667f3bcc908ULL);
    key = Rng::mix(key ^ (static_cast<std::uint64_t>(instance_index) + 0x9e3779b97f4a7c15ULL));
    key = Rng::mix(key ^ (static_cast<std::uint64_t>(iteration) + 0xbb67ae8584caa73bULL));
    return sampler.ratio_set[key % sampler.ratio_set.size()];
}

LabelSet generate_labels(const std::vector<TextInstance>& instances, int width, int height,
                         const RatioSampler& sampler, int iteration) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("label dimensions must be positive");
    }
    LabelSet out{BitMask(width, height, 0), BitMask(width, height, 0),
                 BitMask(width, height, 1), Grid(width, height, 0.0),
                 {}, 0};

    for (std::size_t i = 0; i < instances.size(); ++i) {
        const TextInstance& inst = instances[i];
        const BitMask poly_mask = rasterize_polygon(inst.polygon, width, height);

        if (inst.ignore) {
            for (std::size_t p = 0; p < poly_mask.size(); ++p) {
                if (poly_mask.bit(p)) out.train_mask.set_bit(p, false);
            }
            continue;
        }

        for (std::size_t p = 0; p < poly_mask.size(); ++p) {
            if (poly_mask.bit(p)) out.full_mask.set_bit(p, true);
        }

        InstanceRecord rec;
        rec.index = static_cast<int>(i);
        rec.ratio = sample_ratio(sampler, static_cast<int>(i), iteration);
        Polygon central;
        try {
            rec.distance = offset_distance_for_ratio(inst.polygon, rec.ratio);
            central = shrink_polygon(inst.polygon, rec.distance);
        } catch (const DegenerateError&) {
            central.clear();
        }
        if (central.empty()) {
            rec.collapsed = true;
            out.per_instance.push_back(rec);
            continue;
        }

        const BitMask central_pixels = rasterize_polygon(central, width, height);
        for (std::size_t p = 0; p < central_pixels.size(); ++p) {
            if (!central_pixels.bit(p)) continue;
            out.central_mask.set_bit(p, true);
            if (out.ratio_map.value(p) != 0.0) ++out.overlap_pixels;
            out.ratio_map.set_value(p, rec.distance);
        }
        out.per_instance.push_back(rec);
    }
    return out;
}

}  // namespace textexpand
