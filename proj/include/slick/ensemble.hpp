#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slick/scene_io.hpp"
#include "slick/types.hpp"

namespace slick {

struct SegmentationMask {
    BoolMask pixels;  // true = oil
    std::string scene_id;
    std::string model_id;
};

struct TrainReport {
    int subsets_total = 0;
    int learners_trained = 0;
    int learners_dropped = 0;
    double sampling_seconds = 0.0;
    double training_seconds = 0.0;
};

// Deterministic shuffle then chunking into floor(|pool|/subset_size)
// subsets of exactly subset_size (capped at n_learners, leftovers
// discarded). Single-class subsets are repaired by a deterministic swap
// with a donor subset, or dropped when irreparable.
std::vector<std::vector<LabeledSample>> partition_disjoint_subsets(
    std::vector<LabeledSample> pool, const EnsembleConfig& cfg);

// Backend-specific hyperparameters used by train_ensemble.
struct BackendConfigs {
    SvmTrainConfig svm;
    KernelSpec kernel;        // rbf spec for classical/annealed
    BinaryEncoding encoding;  // annealed
    AnnealConfig anneal;      // annealed
    double gate_angle_scale = 3.14159265358979323846;
};

// Trains one weak learner per subset (derived seed per learner, parallel,
// schedule-independent). `pool` holds raw features; the scaler is fitted
// here and samples are scaled before training.
ModelFile train_ensemble(const std::vector<LabeledSample>& pool, const EnsembleConfig& cfg,
                         const BackendConfigs& backends, const PreprocessConfig& preprocess,
                         WorkingSize working_size, TrainReport* report = nullptr);

// Per-pixel ensemble aggregation. mean_decision: oil iff the mean raw
// decision value is > 0; majority_vote: oil iff strictly more learners
// predict oil. Ties are water.
int aggregate(const std::vector<double>& decisions, Aggregation rule);

// Segments one preprocessed scene. Land pixels are always water.
SegmentationMask predict_mask(const ModelFile& model, const SarScene& preprocessed);

}  // namespace slick
