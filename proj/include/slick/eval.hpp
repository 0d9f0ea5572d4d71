#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slick/ensemble.hpp"
#include "slick/scene_io.hpp"

namespace slick {

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;

    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        fp += o.fp;
        tn += o.tn;
        fn += o.fn;
        return *this;
    }
};

// Pixel-wise counts over non-land pixels (oil = positive).
ConfusionCounts confusion(const BoolMask& pred, const BoolMask& truth, const BoolMask* land);

// Empty-denominator conventions: iou/f1 = 1 when tp+fp+fn = 0; each
// balanced-accuracy term = 1 when its class is absent.
double iou(const ConfusionCounts& c);
double f1(const ConfusionCounts& c);
double balanced_accuracy(const ConfusionCounts& c);

struct SceneMetrics {
    std::string scene_id;
    ConfusionCounts counts;
    double iou = 0.0, f1 = 0.0, balanced_accuracy = 0.0;
};

struct EvalReport {
    std::vector<SceneMetrics> per_scene;
    ConfusionCounts pooled;  // aggregate metrics come from pooled counts
    double aggregate_iou = 0.0, aggregate_f1 = 0.0, aggregate_balanced_accuracy = 0.0;
    double train_seconds = 0.0;
    double mean_inference_seconds_per_image = 0.0;
};

// Segments every entry of the split (entries need ground truth) and pools
// counts. Timing covers preprocess + features + ensemble decisions, not
// disk I/O.
EvalReport evaluate_model(const ModelFile& model, const std::vector<ManifestEntry>& split,
                          WorkingSize working_size);

std::string report_to_json(const EvalReport& report);
std::string report_to_csv(const EvalReport& report);

// One Table-1-shaped Markdown row set: backend, IoU, F1, BA, s/image, train s.
struct BenchRow {
    std::string model;
    double iou = 0.0, f1 = 0.0, balanced_accuracy = 0.0;
    double inference_seconds_per_image = 0.0;
    double training_seconds = 0.0;
};
std::string bench_markdown_table(const std::vector<BenchRow>& rows);

}  // namespace slick
