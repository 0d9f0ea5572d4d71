#include "slick/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "slick/gate_kernel.hpp"
#include "slick/parallel.hpp"
#include "slick/rng.hpp"

namespace slick {

namespace {

bool has_both_classes(const std::vector<LabeledSample>& subset) {
    bool pos = false, neg = false;
    for (const auto& s : subset) (s.y > 0 ? pos : neg) = true;
    return pos && neg;
}

int class_count(const std::vector<LabeledSample>& subset, int label) {
    int n = 0;
    for (const auto& s : subset)
        if (s.y == label) ++n;
    return n;
}

}  // namespace

std::vector<std::vector<LabeledSample>> partition_disjoint_subsets(
    std::vector<LabeledSample> pool, const EnsembleConfig& cfg) {
    cfg.validate();
    const auto subset_size = static_cast<std::size_t>(cfg.subset_size);
    if (pool.size() < subset_size)
        throw std::invalid_argument("partition: pool smaller than subset_size");

    Rng rng(derive_seed(cfg.seed, /*stream=*/0xba661));
    rng.shuffle(pool);

    const std::size_t n_subsets =
        std::min(pool.size() / subset_size, static_cast<std::size_t>(cfg.n_learners));
    std::vector<std::vector<LabeledSample>> subsets(n_subsets);
    for (std::size_t i = 0; i < n_subsets; ++i)
        subsets[i].assign(pool.begin() + i * subset_size,
                          pool.begin() + (i + 1) * subset_size);
    // leftover samples are discarded

    // Repair single-class subsets by swapping with the first donor that has
    // a surplus (>= 2) of the missing class; irreparable subsets drop.
    std::vector<bool> dropped(n_subsets, false);
    for (std::size_t i = 0; i < n_subsets; ++i) {
        if (has_both_classes(subsets[i])) continue;
        const int missing = class_count(subsets[i], +1) == 0 ? +1 : -1;
        bool repaired = false;
        for (std::size_t d = 0; d < n_subsets && !repaired; ++d) {
            if (d == i || dropped[d] || class_count(subsets[d], missing) < 2) continue;
            for (auto& donor_sample : subsets[d]) {
                if (donor_sample.y == missing) {
                    std::swap(subsets[i].front(), donor_sample);
                    repaired = true;
                    break;
                }
            }
        }
        dropped[i] = !repaired;
    }

    std::vector<std::vector<LabeledSample>> kept;
    kept.reserve(n_subsets);
    for (std::size_t i = 0; i < n_subsets; ++i)
        if (!dropped[i]) kept.push_back(std::move(subsets[i]));
    return kept;
}

int aggregate(const std::vector<double>& decisions, Aggregation rule) {
    if (decisions.empty()) throw std::invalid_argument("aggregate: empty decision list");
    if (rule == Aggregation::mean_decision) {
        double sum = 0.0;
        for (double d : decisions) sum += d;
        return sum / static_cast<double>(decisions.size()) > 0.0 ? +1 : -1;
    }
    int oil = 0, water = 0;
    for (double d : decisions) (predict_label(d) > 0 ? oil : water)++;
    return oil > water ? +1 : -1;
}

ModelFile train_ensemble(const std::vector<LabeledSample>& pool, const EnsembleConfig& cfg,
                         const BackendConfigs& backends, const PreprocessConfig& preprocess,
                         WorkingSize working_size, TrainReport* report) {
    const auto t0 = std::chrono::steady_clock::now();

    const FeatureScaler scaler = fit_scaler(pool);
    std::vector<LabeledSample> scaled = pool;
    for (auto& s : scaled) s.x = scaler.apply(s.x);

    const auto subsets = partition_disjoint_subsets(std::move(scaled), cfg);
    if (subsets.empty())
        throw std::runtime_error("train_ensemble: no trainable subset (need both classes)");

    KernelSpec kernel = backends.kernel;
    SvmTrainConfig svm = backends.svm;
    if (cfg.backend == Backend::annealed) {
        // the decoded coefficients live in [0, alpha_max]; keep the
        // classical box consistent for bias reconstruction
        svm.box_C = backends.encoding.alpha_max();
    } else if (cfg.backend == Backend::gate_kernel) {
        GateKernelSpec gspec{backends.gate_angle_scale};
        kernel = gspec.as_kernel_spec();
    }

    std::vector<WeakLearner> learners(subsets.size());
    std::vector<std::uint8_t> ok(subsets.size(), 0);
    std::atomic<int> dropped{0};
    parallel_for(subsets.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const std::uint64_t seed = derive_seed(cfg.seed, i + 1);
            try {
                switch (cfg.backend) {
                    case Backend::classical:
                        learners[i] = smo_train(subsets[i], kernel, svm, seed).learner;
                        break;
                    case Backend::annealed: {
                        AnnealConfig anneal = backends.anneal;
                        anneal.seed = seed;
                        learners[i] = train_weak_learner_annealed(subsets[i], kernel,
                                                                  backends.encoding, anneal);
                        break;
                    }
                    case Backend::gate_kernel: {
                        GateKernelSpec gspec{backends.gate_angle_scale};
                        learners[i] = train_gate_svm(subsets[i], gspec, svm, seed);
                        break;
                    }
                }
                ok[i] = 1;
            } catch (const std::exception&) {
                dropped.fetch_add(1);
            }
        }
    });

    ModelFile model;
    model.backend = cfg.backend;
    model.working_size = working_size;
    model.preprocess = preprocess;
    model.feature_scaler = scaler;
    model.ensemble_config = cfg;
    model.svm_config = svm;
    model.kernel = kernel;
    model.encoding = backends.encoding;
    model.anneal = backends.anneal;
    model.rng_seed = cfg.seed;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        if (ok[i]) model.learners.push_back(std::move(learners[i]));
    model.ensemble_config.n_learners = static_cast<int>(model.learners.size());

    if (report) {
        report->subsets_total = static_cast<int>(subsets.size());
        report->learners_trained = static_cast<int>(model.learners.size());
        report->learners_dropped = dropped.load();
        report->training_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    model.validate();
    return model;
}

namespace {

// Inference-time view of a learner: zero-alpha supports compacted away
// (identical decision function), coefficients premultiplied by the labels.
struct FlatLearner {
    KernelKind kind;
    double param;  // rbf_gamma or angle_scale
    double bias;
    int n = 0;
    std::vector<double> coef;  // alpha_i * y_i
    std::vector<double> sx;    // n x 5 row-major

    double decide(const double* f) const {
        double acc = bias;
        const double* row = sx.data();
        if (kind == KernelKind::rbf) {
            for (int i = 0; i < n; ++i, row += kFeatureDim) {
                double d2 = 0.0;
                for (int k = 0; k < kFeatureDim; ++k) {
                    const double d = row[k] - f[k];
                    d2 += d * d;
                }
                acc += coef[i] * std::exp(-param * d2);
            }
        } else {
            for (int i = 0; i < n; ++i, row += kFeatureDim) {
                double prod = 1.0;
                for (int k = 0; k < kFeatureDim; ++k) {
                    const double c = std::cos(0.5 * param * (row[k] - f[k]));
                    prod *= c * c;
                }
                acc += coef[i] * prod;
            }
        }
        return acc;
    }
};

FlatLearner flatten(const WeakLearner& l) {
    FlatLearner fl;
    fl.kind = l.kernel.kind;
    fl.param = l.kernel.kind == KernelKind::gate ? l.kernel.angle_scale : l.kernel.rbf_gamma;
    fl.bias = l.bias;
    for (std::size_t i = 0; i < l.alphas.size(); ++i) {
        if (l.alphas[i] == 0.0) continue;
        fl.coef.push_back(l.alphas[i] * l.support_y[i]);
        fl.sx.insert(fl.sx.end(), l.support_x[i].begin(), l.support_x[i].end());
        ++fl.n;
    }
    return fl;
}

}  // namespace

SegmentationMask predict_mask(const ModelFile& model, const SarScene& scene) {
    model.validate();
    if (model.learners.empty())
        throw std::invalid_argument("predict_mask: model has no learners");
    for (const auto& l : model.learners) {
        const bool gate_learner = l.kernel.kind == KernelKind::gate;
        if (gate_learner != (model.backend == Backend::gate_kernel))
            throw std::invalid_argument("predict_mask: learner kernel / backend mismatch");
    }

    const FeatureImage fi = extract_feature_image(scene);
    std::vector<FlatLearner> flat;
    flat.reserve(model.learners.size());
    for (const auto& l : model.learners) flat.push_back(flatten(l));
    const auto L = flat.size();
    const bool mean_rule = model.ensemble_config.aggregation == Aggregation::mean_decision;

    SegmentationMask out;
    out.scene_id = scene.id;
    out.model_id = to_string(model.backend) + "-seed" + std::to_string(model.rng_seed);
    out.pixels = BoolMask(scene.height(), scene.width(), 0);

    const int w = scene.width();
    parallel_for(static_cast<std::size_t>(scene.height()), [&](std::size_t r0, std::size_t r1) {
        double f[kFeatureDim];
        for (std::size_t r = r0; r < r1; ++r) {
            for (int c = 0; c < w; ++c) {
                if (!fi.valid.at(static_cast<int>(r), c)) continue;  // land -> water
                for (int k = 0; k < kFeatureDim; ++k) {
                    const double raw = fi.planes[k].at(static_cast<int>(r), c);
                    f[k] = std::clamp(
                        (raw - model.feature_scaler.shift[k]) / model.feature_scaler.scale[k],
                        0.0, 1.0);
                }
                bool oil;
                if (mean_rule) {
                    double sum = 0.0;
                    for (const auto& fl : flat) sum += fl.decide(f);
                    oil = sum / static_cast<double>(L) > 0.0;
                } else {
                    std::size_t votes = 0;
                    for (const auto& fl : flat)
                        if (fl.decide(f) > 0.0) ++votes;
                    oil = votes > L - votes;
                }
                if (oil) out.pixels.at(static_cast<int>(r), c) = 1;
            }
        }
    });
    return out;
}

}  // namespace slick
