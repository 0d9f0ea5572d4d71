#include "slick/eval.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "slick/preprocess.hpp"

namespace slick {

using nlohmann::json;

ConfusionCounts confusion(const BoolMask& pred, const BoolMask& truth, const BoolMask* land) {
    if (!pred.same_shape(truth.height(), truth.width()) ||
        (land && !land->same_shape(truth.height(), truth.width())))
        throw std::invalid_argument("confusion: dimension mismatch");
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (land && (*land)[i]) continue;
        const bool p = pred[i], t = truth[i];
        if (p && t) ++c.tp;
        else if (p && !t) ++c.fp;
        else if (!p && t) ++c.fn;
        else ++c.tn;
    }
    return c;
}

double iou(const ConfusionCounts& c) {
    const auto denom = c.tp + c.fp + c.fn;
    return denom == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(denom);
}

double f1(const ConfusionCounts& c) {
    const auto denom = 2 * c.tp + c.fp + c.fn;
    return denom == 0 ? 1.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

double balanced_accuracy(const ConfusionCounts& c) {
    const double recall_pos =
        c.tp + c.fn == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    const double recall_neg =
        c.tn + c.fp == 0 ? 1.0 : static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    return 0.5 * (recall_pos + recall_neg);
}

EvalReport evaluate_model(const ModelFile& model, const std::vector<ManifestEntry>& split,
                          WorkingSize working_size) {
    if (split.empty()) throw std::invalid_argument("evaluate_model: empty split");
    EvalReport report;
    double inference_total = 0.0;

    for (const auto& entry : split) {
        if (entry.mask_path.empty())
            throw std::invalid_argument("evaluate_model: entry '" + entry.scene_id +
                                        "' lacks ground truth");
        const SarScene raw = load_scene(entry, working_size);
        GroundTruthMask truth = load_mask(entry.mask_path, working_size);
        if (raw.land_mask)  // land is never oil
            for (std::size_t i = 0; i < truth.pixels.size(); ++i)
                if ((*raw.land_mask)[i]) truth.pixels[i] = 0;

        const auto t0 = std::chrono::steady_clock::now();
        const SarScene pre = preprocess_scene(raw, model.preprocess);
        const SegmentationMask mask = predict_mask(model, pre);
        inference_total +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        SceneMetrics sm;
        sm.scene_id = entry.scene_id;
        sm.counts = confusion(mask.pixels, truth.pixels,
                              raw.land_mask ? &*raw.land_mask : nullptr);
        sm.iou = iou(sm.counts);
        sm.f1 = f1(sm.counts);
        sm.balanced_accuracy = balanced_accuracy(sm.counts);
        report.pooled += sm.counts;
        report.per_scene.push_back(std::move(sm));
    }

    report.aggregate_iou = iou(report.pooled);
    report.aggregate_f1 = f1(report.pooled);
    report.aggregate_balanced_accuracy = balanced_accuracy(report.pooled);
    report.mean_inference_seconds_per_image = inference_total / split.size();
    return report;
}

namespace {

json counts_json(const ConfusionCounts& c) {
    return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
    json doc;
    doc["per_scene"] = json::array();
    for (const auto& s : report.per_scene) {
        doc["per_scene"].push_back({{"scene_id", s.scene_id},
                                    {"iou", s.iou},
                                    {"f1", s.f1},
                                    {"balanced_accuracy", s.balanced_accuracy},
                                    {"counts", counts_json(s.counts)}});
    }
    doc["aggregate"] = {{"iou", report.aggregate_iou},
                        {"f1", report.aggregate_f1},
                        {"balanced_accuracy", report.aggregate_balanced_accuracy},
                        {"counts", counts_json(report.pooled)}};
    doc["timing"] = {{"train_seconds", report.train_seconds},
                     {"mean_inference_seconds_per_image",
                      report.mean_inference_seconds_per_image}};
    return doc.dump(2);
}

std::string report_to_csv(const EvalReport& report) {
    std::ostringstream out;
    out.precision(10);
    out << "scene_id,iou,f1,balanced_accuracy,tp,fp,tn,fn\n";
    for (const auto& s : report.per_scene)
        out << s.scene_id << ',' << s.iou << ',' << s.f1 << ',' << s.balanced_accuracy << ','
            << s.counts.tp << ',' << s.counts.fp << ',' << s.counts.tn << ',' << s.counts.fn
            << '\n';
    return out.str();
}

std::string bench_markdown_table(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "| Model | IoU | F-1 Score | Balanced Accuracy | Inference time per image (s) | "
           "Training time (s) |\n";
    out << "|---|---|---|---|---|---|\n";
    out.setf(std::ios::fixed);
    for (const auto& r : rows) {
        out.precision(2);
        out << "| " << r.model << " | " << r.iou << " | " << r.f1 << " | "
            << r.balanced_accuracy << " | " << r.inference_seconds_per_image << " | "
            << r.training_seconds << " |\n";
    }
    return out.str();
}

}  // namespace slick
