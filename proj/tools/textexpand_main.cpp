#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "textexpand/annotations.hpp"
#include "textexpand/errors.hpp"
#include "textexpand/eval.hpp"
#include "textexpand/grid_io.hpp"
#include "textexpand/inference.hpp"
#include "textexpand/labels.hpp"
#include "textexpand/selfcheck.hpp"
#include "textexpand/synth.hpp"

namespace fs = std::filesystem;
using namespace textexpand;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitPropertyFailure = 2;

struct SizeArg {
    int width = 0;
    int height = 0;
};

SizeArg parse_size(const std::string& text) {
    const std::size_t x = text.find('x');
    if (x == std::string::npos) {
        throw CLI::ValidationError("--size", "expected WIDTHxHEIGHT, e.g. 640x640");
    }
    try {
        SizeArg s{std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
        if (s.width < 1 || s.height < 1) throw std::invalid_argument("non-positive");
        return s;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--size", "expected WIDTHxHEIGHT, e.g. 640x640");
    }
}

std::vector<double> parse_ratio_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string token =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!token.empty()) out.push_back(std::stod(token));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

/// Annotation files (*.json canonical, *.txt ICDAR15) sorted by filename.
std::vector<AnnotationFile> load_annotation_dir(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("annotation directory not found: " + dir.string());
    }
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".json" || ext == ".txt") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        throw IoError("no .json or .txt annotation files in " + dir.string());
    }

    std::vector<AnnotationFile> out;
    out.reserve(paths.size());
    for (const fs::path& path : paths) {
        const std::string content = read_text_file(path);
        try {
            AnnotationFile ann = path.extension() == ".txt"
                                     ? parse_icdar15(content, path.stem().string())
                                     : parse_polygon_json(content);
            if (ann.image_id.empty()) ann.image_id = path.stem().string();
            out.push_back(std::move(ann));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
    }
    return out;
}

RatioSampler make_sampler(const std::optional<double>& fixed, const std::string& ratios,
                          std::uint64_t seed) {
    if (fixed.has_value()) return RatioSampler::fixed_ratio(*fixed);
    if (!ratios.empty()) return RatioSampler::uniform_set(parse_ratio_list(ratios), seed);
    return RatioSampler::uniform_set(kDefaultRatioSet, seed);
}

SizeArg derive_size(const std::vector<AnnotationFile>& annotations) {
    double max_x = 0.0, max_y = 0.0;
    for (const AnnotationFile& ann : annotations) {
        for (const TextInstance& inst : ann.instances) {
            const Bounds b = polygon_bounds(inst.polygon);
            max_x = std::max(max_x, b.max_x);
            max_y = std::max(max_y, b.max_y);
        }
    }
    return {std::max(32, static_cast<int>(std::ceil(max_x)) + 8),
            std::max(32, static_cast<int>(std::ceil(max_y)) + 8)};
}

int run_gen_labels(const fs::path& annotations_dir, const fs::path& out_dir,
                   const std::optional<double>& fixed, const std::string& ratios,
                   const std::string& size_text, std::uint64_t seed, int iteration) {
    const std::vector<AnnotationFile> annotations = load_annotation_dir(annotations_dir);
    const SizeArg size = parse_size(size_text);
    const RatioSampler sampler = make_sampler(fixed, ratios, seed);
    fs::create_directories(out_dir);

    for (const AnnotationFile& ann : annotations) {
        const LabelSet labels =
            generate_labels(ann.instances, size.width, size.height, sampler, iteration);
        write_mask_pgm(out_dir / (ann.image_id + "_full.pgm"), labels.full_mask);
        write_mask_pgm(out_dir / (ann.image_id + "_central.pgm"), labels.central_mask);
        write_mask_pgm(out_dir / (ann.image_id + "_train.pgm"), labels.train_mask);
        write_grid(out_dir / (ann.image_id + "_ratio.f32g"), labels.ratio_map);
        write_text_file(out_dir / (ann.image_id + "_instances.json"),
                        instance_records_to_json(ann.image_id, labels.per_instance));
    }
    return kExitOk;
}

int run_infer(const fs::path& full_path, const fs::path& central_path,
              const fs::path& ratio_path, const fs::path& config_path, const fs::path& out_path,
              bool quad, const std::string& image_id) {
    PostprocessConfig config;
    if (!config_path.empty()) {
        config = postprocess_config_from_json(read_text_file(config_path));
    }
    if (quad) config.quad_mode = true;

    const Grid full = read_grid(full_path);
    const Grid central = read_grid(central_path);
    const Grid ratio = read_grid(ratio_path);
    const InferenceResult result = extract_detections(full, central, ratio, config);

    std::string id = image_id;
    if (id.empty()) {
        id = full_path.stem().string();
        const std::string suffix = "_full";
        if (id.size() > suffix.size() && id.ends_with(suffix)) {
            id.resize(id.size() - suffix.size());
        }
    }
    write_text_file(out_path, detections_to_json(id, result.detections));
    return kExitOk;
}

int run_eval(const fs::path& detections_dir, const fs::path& annotations_dir,
             double iou_threshold) {
    const std::vector<AnnotationFile> annotations = load_annotation_dir(annotations_dir);
    EvalOptions options;
    options.iou_threshold = iou_threshold;

    EvalAccumulator accumulator;
    for (const AnnotationFile& ann : annotations) {
        const fs::path det_path = detections_dir / (ann.image_id + ".json");
        if (!fs::exists(det_path)) {
            throw IoError("missing detections file: " + det_path.string());
        }
        const auto [id, detections] = detections_from_json(read_text_file(det_path));
        accumulator.add(evaluate(detections, ann.instances, options));
    }
    std::cout << eval_report_to_json(accumulator.summary());
    return kExitOk;
}

int run_e2e_synth(const fs::path& annotations_dir, double noise_sigma, double ratio_noise_sigma,
                  int jitter, std::uint64_t seed, const std::string& size_text,
                  const std::optional<double>& fixed, const std::string& ratios,
                  int iteration, double iou_threshold, bool quad) {
    const std::vector<AnnotationFile> annotations = load_annotation_dir(annotations_dir);
    const SizeArg size = size_text.empty() ? derive_size(annotations) : parse_size(size_text);
    const RatioSampler sampler = make_sampler(fixed, ratios, seed);

    PostprocessConfig config;
    config.quad_mode = quad;
    EvalOptions eval_options;
    eval_options.iou_threshold = iou_threshold;

    EvalAccumulator accumulator;
    for (std::size_t i = 0; i < annotations.size(); ++i) {
        const AnnotationFile& ann = annotations[i];
        const LabelSet labels =
            generate_labels(ann.instances, size.width, size.height, sampler, iteration);
        NoiseConfig noise;
        noise.prob_noise_sigma = noise_sigma;
        noise.ratio_noise_sigma = ratio_noise_sigma;
        noise.boundary_jitter = jitter;
        noise.seed = seed + i;
        const SynthPredictions pred = synth_predictions(labels, noise);
        const InferenceResult result =
            extract_detections(pred.full, pred.central, pred.ratio, config);
        accumulator.add(evaluate(result.detections, ann.instances, eval_options));
    }
    std::cout << eval_report_to_json(accumulator.summary());
    return kExitOk;
}

int run_check_geometry(int trials, std::uint64_t seed) {
    struct Suite {
        const char* name;
        PropertyStats stats;
    };
    const Suite suites[] = {
        {"miter-roundtrip", check_miter_roundtrip(trials, seed)},
        {"expansion-containment", check_expansion_containment(std::max(1, trials / 5), seed + 1)},
        {"distance-transform", check_distance_transform(std::max(1, trials / 5), seed + 2)},
    };
    bool all_ok = true;
    for (const Suite& s : suites) {
        std::cout << s.name << ": " << (s.stats.trials - s.stats.failures) << " passed, "
                  << s.stats.failures << " failed\n";
        if (!s.stats.ok()) {
            all_ok = false;
            std::cout << "  first failure: " << s.stats.first_failure << "\n";
        }
    }
    return all_ok ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central-region text representation toolkit: label generation, polygon "
                 "expansion post-processing, and detection evaluation"};
    app.require_subcommand(1);

    // gen-labels
    auto* gen = app.add_subcommand("gen-labels", "Generate ground-truth label maps");
    fs::path gen_annotations, gen_out;
    std::optional<double> gen_fixed;
    std::string gen_ratios, gen_size = "640x640";
    std::uint64_t gen_seed = 0;
    int gen_iteration = 0;
    gen->add_option("--annotations", gen_annotations, "Annotation directory")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--ratios", gen_ratios, "Comma-separated shrink ratio set");
    gen->add_option("--fixed", gen_fixed, "Fixed shrink ratio in (0, 1]");
    gen->add_option("--size", gen_size, "Label map size as WIDTHxHEIGHT");
    gen->add_option("--seed", gen_seed, "Ratio sampling seed");
    gen->add_option("--iteration", gen_iteration, "Training iteration index");

    // infer
    auto* infer = app.add_subcommand("infer", "Run post-processing on prediction grids");
    fs::path infer_full, infer_central, infer_ratio, infer_config, infer_out;
    bool infer_quad = false;
    std::string infer_image_id;
    infer->add_option("--full", infer_full, "Full text map (F32G)")->required();
    infer->add_option("--central", infer_central, "Central text map (F32G)")->required();
    infer->add_option("--ratio", infer_ratio, "Expanding ratio map (F32G)")->required();
    infer->add_option("--config", infer_config, "Post-processing config JSON");
    infer->add_option("--out", infer_out, "Output detections JSON")->required();
    infer->add_flag("--quad", infer_quad, "Quadrangle mode (min-area rectangles)");
    infer->add_option("--image-id", infer_image_id, "Image id recorded in the output");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate detections against annotations");
    fs::path eval_detections, eval_annotations;
    double eval_iou = 0.5;
    eval_cmd->add_option("--detections", eval_detections, "Detections directory")->required();
    eval_cmd->add_option("--annotations", eval_annotations, "Annotation directory")->required();
    eval_cmd->add_option("--iou", eval_iou, "IoU threshold");

    // e2e-synth
    auto* e2e = app.add_subcommand(
        "e2e-synth", "Labels -> synthetic predictions -> inference -> evaluation");
    fs::path e2e_annotations;
    double e2e_sigma = 0.0, e2e_ratio_sigma = 0.0, e2e_iou = 0.5;
    int e2e_jitter = 0, e2e_iteration = 0;
    std::uint64_t e2e_seed = 0;
    std::string e2e_size, e2e_ratios;
    std::optional<double> e2e_fixed;
    bool e2e_quad = false;
    e2e->add_option("--annotations", e2e_annotations, "Annotation directory")->required();
    e2e->add_option("--noise-sigma", e2e_sigma, "Gaussian sigma on probability maps");
    e2e->add_option("--ratio-noise-sigma", e2e_ratio_sigma, "Gaussian sigma on the ratio map");
    e2e->add_option("--jitter", e2e_jitter, "Boundary jitter band, pixels");
    e2e->add_option("--seed", e2e_seed, "Noise and sampling seed");
    e2e->add_option("--size", e2e_size, "Grid size as WIDTHxHEIGHT (derived when omitted)");
    e2e->add_option("--ratios", e2e_ratios, "Comma-separated shrink ratio set");
    e2e->add_option("--fixed", e2e_fixed, "Fixed shrink ratio in (0, 1]");
    e2e->add_option("--iteration", e2e_iteration, "Training iteration index");
    e2e->add_option("--iou", e2e_iou, "IoU threshold for evaluation");
    e2e->add_flag("--quad", e2e_quad, "Quadrangle mode");

    // check-geometry
    auto* check = app.add_subcommand("check-geometry", "Run the geometry property suites");
    int check_trials = 1000;
    std::uint64_t check_seed = 1;
    check->add_option("--trials", check_trials, "Trials for the miter suite");
    check->add_option("--seed", check_seed, "Generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return run_gen_labels(gen_annotations, gen_out, gen_fixed, gen_ratios, gen_size,
                                  gen_seed, gen_iteration);
        }
        if (infer->parsed()) {
            return run_infer(infer_full, infer_central, infer_ratio, infer_config, infer_out,
                             infer_quad, infer_image_id);
        }
        if (eval_cmd->parsed()) {
            return run_eval(eval_detections, eval_annotations, eval_iou);
        }
        if (e2e->parsed()) {
            return run_e2e_synth(e2e_annotations, e2e_sigma, e2e_ratio_sigma, e2e_jitter,
                                 e2e_seed, e2e_size, e2e_fixed, e2e_ratios, e2e_iteration,
                                 e2e_iou, e2e_quad);
        }
        if (check->parsed()) {
            return run_check_geometry(check_trials, check_seed);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
