#pragma once

#include <string>
#include <vector>

#include "slick/ensemble.hpp"
#include "slick/eval.hpp"
#include "slick/scene_io.hpp"

namespace slick {

// End-to-end orchestration shared by the CLI and the acceptance suite.

struct TrainOptions {
    EnsembleConfig ensemble;
    BackendConfigs backends;
    PreprocessConfig preprocess;
    WorkingSize working_size;
    bool gamma_sweep = false;  // pick gamma from the sweep candidates on the train split
};

// Per-scene balanced sampling over the train split; per-scene RNG streams
// derive from (seed, scene_id hash) so worker order cannot matter.
std::vector<LabeledSample> collect_training_pool(const std::vector<ManifestEntry>& train_split,
                                                 const TrainOptions& opts);

// Mean inter-percentile contrast over the split for each sweep candidate;
// returns the winning gamma.
double sweep_gamma(const std::vector<ManifestEntry>& train_split, const TrainOptions& opts);

// sample -> fit scaler -> partition -> train backend -> assembled model.
// When opts.gamma_sweep is set the swept gamma lands in the model's stored
// preprocess config.
ModelFile train_from_manifest(const DatasetManifest& manifest, const TrainOptions& opts,
                              TrainReport* report = nullptr);

// load -> preprocess with the model's stored config -> segment.
SegmentationMask predict_entry(const ModelFile& model, const ManifestEntry& entry);

void write_mask_png(const std::string& path, const BoolMask& mask);

std::string train_report_json(const TrainReport& report, const ModelFile& model);

}  // namespace slick
