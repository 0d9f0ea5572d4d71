#include "slick/pipeline.hpp"

#include <json.hpp>

#include <chrono>
#include <stdexcept>

#include "slick/image_io.hpp"
#include "slick/preprocess.hpp"
#include "slick/rng.hpp"

namespace slick {

std::vector<LabeledSample> collect_training_pool(const std::vector<ManifestEntry>& train_split,
                                                 const TrainOptions& opts) {
    std::vector<LabeledSample> pool;
    for (const auto& entry : train_split) {
        if (entry.mask_path.empty())
            throw std::runtime_error("train entry '" + entry.scene_id + "' lacks a mask");
        const SarScene raw = load_scene(entry, opts.working_size);
        GroundTruthMask truth = load_mask(entry.mask_path, opts.working_size);
        if (!truth.pixels.same_shape(raw.height(), raw.width()))
            throw std::runtime_error("scene '" + entry.scene_id + "': mask dimension mismatch");
        if (raw.land_mask)  // land is never oil
            for (std::size_t i = 0; i < truth.pixels.size(); ++i)
                if ((*raw.land_mask)[i]) truth.pixels[i] = 0;

        const SarScene pre = preprocess_scene(raw, opts.preprocess);
        const std::uint64_t seed =
            derive_seed(opts.ensemble.seed, fnv1a(entry.scene_id));
        auto samples = sample_training_pixels(pre, truth.pixels, seed);
        pool.insert(pool.end(), std::make_move_iterator(samples.begin()),
                    std::make_move_iterator(samples.end()));
    }
    return pool;
}

double sweep_gamma(const std::vector<ManifestEntry>& train_split, const TrainOptions& opts) {
    if (train_split.empty()) throw std::invalid_argument("gamma sweep: empty split");
    std::vector<double> totals(kGammaSweepCandidates.size(), 0.0);
    for (const auto& entry : train_split) {
        const SarScene raw = load_scene(entry, opts.working_size);
        const Image base = clip_percentiles(median_filter(raw.vv, opts.preprocess.median_window),
                                            opts.preprocess.clip_low_pct,
                                            opts.preprocess.clip_high_pct);
        const BoolMask* land =
            raw.land_mask && opts.preprocess.apply_land_mask ? &*raw.land_mask : nullptr;
        for (std::size_t g = 0; g < kGammaSweepCandidates.size(); ++g)
            totals[g] += gamma_contrast(base, kGammaSweepCandidates[g], land);
    }
    std::size_t best = 0;
    for (std::size_t g = 1; g < totals.size(); ++g)
        if (totals[g] > totals[best]) best = g;
    return kGammaSweepCandidates[best];
}

ModelFile train_from_manifest(const DatasetManifest& manifest, const TrainOptions& opts,
                              TrainReport* report) {
    const auto train_split = manifest.split("train");
    if (train_split.empty()) throw std::runtime_error("manifest has no train entries");

    TrainOptions resolved = opts;
    if (opts.gamma_sweep) resolved.preprocess.gamma = sweep_gamma(train_split, opts);

    const auto t0 = std::chrono::steady_clock::now();
    const auto pool = collect_training_pool(train_split, resolved);
    if (pool.empty())
        throw std::runtime_error("training pool is empty (no usable pixels in train split)");
    const double sampling_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ModelFile model = train_ensemble(pool, resolved.ensemble, resolved.backends,
                                     resolved.preprocess, resolved.working_size, report);
    if (report) report->sampling_seconds = sampling_s;
    return model;
}

SegmentationMask predict_entry(const ModelFile& model, const ManifestEntry& entry) {
    const SarScene raw = load_scene(entry, model.working_size);
    const SarScene pre = preprocess_scene(raw, model.preprocess);
    return predict_mask(model, pre);
}

void write_mask_png(const std::string& path, const BoolMask& mask) {
    Raster<std::uint8_t> img(mask.height(), mask.width());
    for (std::size_t i = 0; i < mask.size(); ++i) img[i] = mask[i] ? 255 : 0;
    write_png_gray8(path, img);
}

std::string train_report_json(const TrainReport& report, const ModelFile& model) {
    nlohmann::json doc;
    doc["backend"] = to_string(model.backend);
    doc["seed"] = model.rng_seed;
    doc["subsets_total"] = report.subsets_total;
    doc["learners_trained"] = report.learners_trained;
    doc["learners_dropped"] = report.learners_dropped;
    doc["timing"] = {{"sampling_seconds", report.sampling_seconds},
                     {"training_seconds", report.training_seconds}};
    doc["preprocess"] = {{"median_window", model.preprocess.median_window},
                         {"clip_low_pct", model.preprocess.clip_low_pct},
                         {"clip_high_pct", model.preprocess.clip_high_pct},
                         {"gamma", model.preprocess.gamma},
                         {"apply_land_mask", model.preprocess.apply_land_mask}};
    return doc.dump(2);
}

}  // namespace slick
