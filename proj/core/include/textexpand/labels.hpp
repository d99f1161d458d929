#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "textexpand/geometry.hpp"
#include "textexpand/raster.hpp"

namespace textexpand {

/// One annotated text instance. Instances flagged ignore ("don't care") are
/// excluded from positive supervision and from evaluation penalties.
struct TextInstance {
    Polygon polygon;
    bool ignore = false;
    std::optional<std::string> transcription;
};

/// Per-instance shrink ratios used during label generation. Uniform-set mode
/// draws a value as a pure function of (seed, instance, iteration), so the
/// same instance sees different ratios across iterations and different
/// instances of one image see different ratios within an iteration.
struct RatioSampler {
    enum class Mode { kFixed, kUniformSet };

    Mode mode = Mode::kFixed;
    double fixed = 0.4;
    std::vector<double> ratio_set;
    std::uint64_t seed = 0;

    static RatioSampler fixed_ratio(double r);
    static RatioSampler uniform_set(std::vector<double> ratios, std::uint64_t seed);
};

/// Shrink ratios spanning the productive range around the 0.4 optimum.
inline const std::vector<double> kDefaultRatioSet = {0.3, 0.4, 0.5, 0.6};

double sample_ratio(const RatioSampler& sampler, int instance_index, int iteration);

struct InstanceRecord {
    int index = 0;
    double ratio = 1.0;
    double distance = 0.0;
    bool collapsed = false;  ///< central region vanished; full supervision only
};

/// Ground-truth bundle for one image.
struct LabelSet {
    BitMask full_mask;     ///< union of non-ignore instance polygons
    BitMask central_mask;  ///< union of shrunk instance polygons
    BitMask train_mask;    ///< 0 inside ignore polygons, 1 elsewhere
    Grid ratio_map;        ///< offset distance d on central pixels, 0 elsewhere
    std::vector<InstanceRecord> per_instance;
    std::size_t overlap_pixels = 0;  ///< central pixels claimed by more than one instance
};

/// Builds the full mask, central mask, ratio map and training-eligibility
/// mask for one image. Collapsed or degenerate instances keep contributing
/// to the full mask but are flagged and skipped for central supervision.
LabelSet generate_labels(const std::vector<TextInstance>& instances, int width, int height,
                         const RatioSampler& sampler, int iteration);

}  // namespace textexpand
