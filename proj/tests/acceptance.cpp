// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 3 and 4 share trained models and run together.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slick/ensemble.hpp"
#include "slick/eval.hpp"
#include "slick/gate_kernel.hpp"
#include "slick/pipeline.hpp"
#include "slick/preprocess.hpp"
#include "slick/qubo_annealer.hpp"
#include "slick/rng.hpp"
#include "slick/svm_core.hpp"
#include "slick/synth.hpp"
#include "support.hpp"

using namespace slick;

namespace {

struct Outcome {
    int criterion;
    std::string name;
    bool pass = false;
    std::string detail;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LabeledSample mk(Features x, int y) {
    LabeledSample s;
    s.x = std::move(x);
    s.y = y;
    return s;
}

QuboProblem random_qubo(int n, Rng& rng) {
    QuboProblem q;
    q.n_vars = n;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) q.add(i, j, rng.uniform(-1.0, 1.0));
    return q;
}

double min_eigenvalue(const std::vector<std::vector<double>>& g) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = g[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// 1. QUBO correctness: qubo_energy == direct E(alpha) to 1e-10 on 1000 random
//    (instance, bitstring) pairs; decode reproduces alpha exactly; < 5 s.
Outcome criterion_1() {
    Outcome out{1, "QUBO energy equivalence and decode round-trip"};
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(0xc1);
    KernelSpec kernel;
    BinaryEncoding enc;

    int pairs = 0;
    double worst = 0.0;
    bool alpha_exact = true;
    for (int instance = 0; instance < 100; ++instance) {
        const int n = 2 + static_cast<int>(rng.uniform_below(9));
        std::vector<LabeledSample> samples;
        for (int i = 0; i < n; ++i)
            samples.push_back(mk(test::random_unit_features(rng), i % 2 ? +1 : -1));
        const QuboProblem q = build_qubo(samples, kernel, enc);

        for (int b = 0; b < 10; ++b, ++pairs) {
            std::vector<std::uint8_t> bits(q.n_vars);
            for (auto& v : bits) v = static_cast<std::uint8_t>(rng.uniform_below(2));

            const WeakLearner decoded = decode_sample(bits, samples, enc, kernel);
            // exact positional reconstruction
            for (int s = 0; s < n; ++s) {
                double alpha = 0.0, p = 1.0;
                for (int k = 0; k < enc.bits_per_alpha; ++k, p *= enc.base)
                    alpha += p * bits[enc.bits_per_alpha * s + k];
                if (decoded.alphas[s] != alpha) alpha_exact = false;
            }

            double direct = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    direct += 0.5 * decoded.alphas[i] * decoded.alphas[j] * samples[i].y *
                              samples[j].y *
                              (kernel_eval(kernel, samples[i].x, samples[j].x) +
                               2.0 * enc.penalty);
            for (double a : decoded.alphas) direct -= a;
            worst = std::max(worst, std::abs(qubo_energy(q, bits) - direct));
        }
    }
    const double elapsed = seconds_since(t0);

    out.pass = pairs == 1000 && worst <= 1e-10 && alpha_exact && elapsed < 5.0;
    std::ostringstream d;
    d << pairs << " pairs, max |energy diff| = " << worst << ", alpha decode exact = "
      << (alpha_exact ? "yes" : "no") << ", " << elapsed << " s";
    out.detail = d.str();
    return out;
}

// ---------------------------------------------------------------------------
// 2. Annealer quality: best of 1000 reads hits the brute-force ground energy
//    on >= 95 of 100 random 12-variable QUBOs; < 60 s.
Outcome criterion_2() {
    Outcome out{2, "annealer ground-state recovery (1000 reads, best-20 retention)"};
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(0xc2);

    int hits = 0;
    bool retention_ok = true;
    for (int instance = 0; instance < 100; ++instance) {
        const QuboProblem q = random_qubo(12, rng);
        const AnnealSample ground = brute_force_solve(q);

        AnnealConfig cfg;
        cfg.num_reads = 1000;
        cfg.top_samples = 20;
        cfg.sweeps_per_read = 100;
        cfg.seed = 9000 + instance;
        const auto reads = simulated_annealing_sample(q, cfg);
        if (std::abs(reads.front().energy - ground.energy) <= 1e-9) ++hits;
        for (int r = 1; r < cfg.top_samples; ++r)
            if (reads[r].energy < reads[r - 1].energy) retention_ok = false;
    }
    const double elapsed = seconds_since(t0);

    out.pass = hits >= 95 && retention_ok && elapsed < 60.0;
    std::ostringstream d;
    d << hits << "/100 ground states found, retention sorted = "
      << (retention_ok ? "yes" : "no") << ", " << elapsed << " s";
    out.detail = d.str();
    return out;
}

// ---------------------------------------------------------------------------
// 3+4. Backend parity and inference-cost ordering on a fixed synthetic split.
std::vector<Outcome> criteria_3_4() {
    Outcome parity{3, "backend parity on the synthetic split"};
    Outcome cost{4, "inference-cost ordering"};
    const auto t0 = std::chrono::steady_clock::now();

    test::TempDir dir("acceptance_parity");
    SynthConfig synth;
    synth.n_scenes = 220;
    synth.n_train = 200;
    synth.n_val = 0;
    synth.size = 256;
    synth.slick_count_range = {1, 3};
    synth.slick_darkness = 0.3;
    synth.speckle_looks = 4;
    synth.background_level = 0.6;
    synth.vh_ratio = 0.25;
    synth.seed = 424242;
    const DatasetManifest manifest = generate_synthetic_dataset(synth, dir.str());

    TrainOptions opts;
    opts.ensemble.n_learners = 40;  // same model size across backends
    opts.ensemble.subset_size = 40;
    opts.ensemble.seed = 7;
    opts.backends.anneal.num_reads = 100;
    opts.backends.anneal.top_samples = 20;
    opts.backends.anneal.sweeps_per_read = 100;

    const auto test_split = manifest.split("test");
    struct Run {
        Backend backend;
        double iou = 0.0;
        double sec_per_image = 0.0;
    };
    std::vector<Run> runs = {{Backend::classical}, {Backend::annealed}, {Backend::gate_kernel}};

    std::ostringstream detail;
    for (auto& run : runs) {
        TrainOptions o = opts;
        o.ensemble.backend = run.backend;
        const ModelFile model = train_from_manifest(manifest, o);
        const EvalReport report = evaluate_model(model, test_split, o.working_size);
        run.iou = report.aggregate_iou;
        run.sec_per_image = report.mean_inference_seconds_per_image;
        detail << to_string(run.backend) << ": IoU " << run.iou << ", "
               << run.sec_per_image << " s/img (" << model.learners.size()
               << " learners); ";
    }
    const double elapsed = seconds_since(t0);

    bool iou_ok = true;
    for (const auto& r : runs) iou_ok = iou_ok && r.iou >= 0.5;
    double max_pairwise = 0.0;
    for (std::size_t i = 0; i < runs.size(); ++i)
        for (std::size_t j = i + 1; j < runs.size(); ++j)
            max_pairwise = std::max(max_pairwise, std::abs(runs[i].iou - runs[j].iou));

    parity.pass = iou_ok && max_pairwise <= 0.05 && elapsed < 900.0;
    {
        std::ostringstream d;
        d << detail.str() << "max pairwise IoU diff = " << max_pairwise << ", " << elapsed
          << " s total";
        parity.detail = d.str();
    }

    const double classical_s = runs[0].sec_per_image;
    const double annealed_s = runs[1].sec_per_image;
    const double gate_s = runs[2].sec_per_image;
    cost.pass = gate_s > 2.0 * annealed_s && annealed_s <= 3.0 * classical_s;
    {
        std::ostringstream d;
        d << "classical " << classical_s << " s/img, annealed " << annealed_s
          << " s/img, gate " << gate_s << " s/img (gate/annealed = "
          << gate_s / annealed_s << ", annealed/classical = " << annealed_s / classical_s
          << ")";
        cost.detail = d.str();
    }
    return {parity, cost};
}

// ---------------------------------------------------------------------------
// 5. SMO oracle equivalence: KKT feasibility on 50 random 10-sample problems;
//    objective matches a dense 2-sample dual grid search to 1e-3.
Outcome criterion_5() {
    Outcome out{5, "SMO constraint satisfaction and 2-sample dual optimality"};
    Rng rng(0xc5);
    KernelSpec kernel;
    SvmTrainConfig cfg;

    bool kkt_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<LabeledSample> samples;
        for (int i = 0; i < 10; ++i)
            samples.push_back(mk(test::random_unit_features(rng), i % 2 ? +1 : -1));
        const SmoResult res = smo_train(samples, kernel, cfg, trial);
        double sum = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (res.learner.alphas[i] < 0.0 || res.learner.alphas[i] > cfg.box_C) kkt_ok = false;
            sum += res.learner.alphas[i] * samples[i].y;
        }
        if (std::abs(sum) > 1e-9) kkt_ok = false;
    }

    auto dual_objective = [&](const std::vector<LabeledSample>& samples,
                              const std::vector<double>& alphas) {
        double obj = 0.0;
        for (double a : alphas) obj += a;
        for (std::size_t i = 0; i < samples.size(); ++i)
            for (std::size_t j = 0; j < samples.size(); ++j)
                obj -= 0.5 * alphas[i] * alphas[j] * samples[i].y * samples[j].y *
                       kernel_eval(kernel, samples[i].x, samples[j].x);
        return obj;
    };

    double worst_gap = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<LabeledSample> samples = {
            mk(test::random_unit_features(rng), +1), mk(test::random_unit_features(rng), -1)};
        const SmoResult res = smo_train(samples, kernel, cfg, 100 + trial);
        const double got = dual_objective(samples, res.learner.alphas);

        // equality constraint pins alpha_1 = alpha_2 = a on opposite labels
        double best = 0.0;
        for (int i = 0; i <= 30000; ++i) {
            const double a = cfg.box_C * i / 30000.0;
            best = std::max(best, dual_objective(samples, {a, a}));
        }
        worst_gap = std::max(worst_gap, best - got);
    }

    out.pass = kkt_ok && worst_gap <= 1e-3;
    std::ostringstream d;
    d << "KKT feasible = " << (kkt_ok ? "yes" : "no")
      << ", max 2-sample objective gap = " << worst_gap;
    out.detail = d.str();
    return out;
}

// ---------------------------------------------------------------------------
// 6. Quantum-kernel identities; < 10 s.
Outcome criterion_6() {
    Outcome out{6, "quantum kernel identities"};
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(0xc6);
    const GateKernelSpec spec;

    bool self_ok = true, sym_ok = true;
    double worst_path = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const Features a = test::random_unit_features(rng);
        const Features b = test::random_unit_features(rng);
        if (std::abs(kernel_value(a, a, spec) - 1.0) > 1e-15) self_ok = false;
        if (std::abs(kernel_value(a, b, spec) - kernel_value(b, a, spec)) > 1e-12)
            sym_ok = false;
        worst_path = std::max(
            worst_path, std::abs(kernel_value(a, b, spec) - kernel_value_statevector(a, b, spec)));
    }

    double min_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Features> xs;
        for (int i = 0; i < 20; ++i) xs.push_back(test::random_unit_features(rng));
        min_eig = std::min(min_eig, min_eigenvalue(quantum_gram_matrix(xs, spec)));
    }
    const double elapsed = seconds_since(t0);

    out.pass = self_ok && sym_ok && worst_path <= 1e-12 && min_eig >= -1e-9 && elapsed < 10.0;
    std::ostringstream d;
    d << "K(x,x)=1: " << (self_ok ? "yes" : "no") << ", symmetric: " << (sym_ok ? "yes" : "no")
      << ", max |statevector - closed form| = " << worst_path
      << ", min Gram eigenvalue = " << min_eig << ", " << elapsed << " s";
    out.detail = d.str();
    return out;
}

// ---------------------------------------------------------------------------
// 7. Metric fixtures and the f1 = 2*iou/(1+iou) identity.
Outcome criterion_7() {
    Outcome out{7, "metric fixtures and f1/iou identity"};
    auto counts = [](std::uint64_t tp, std::uint64_t fp, std::uint64_t tn, std::uint64_t fn) {
        ConfusionCounts c;
        c.tp = tp;
        c.fp = fp;
        c.tn = tn;
        c.fn = fn;
        return c;
    };

    bool fixtures_ok = true;
    {
        const ConfusionCounts perfect = counts(10, 0, 20, 0);
        fixtures_ok &= iou(perfect) == 1.0 && f1(perfect) == 1.0 &&
                       balanced_accuracy(perfect) == 1.0;
        const ConfusionCounts uniform = counts(1, 1, 1, 1);
        fixtures_ok &= std::abs(iou(uniform) - 1.0 / 3.0) <= 1e-15 &&
                       std::abs(f1(uniform) - 0.5) <= 1e-15 &&
                       std::abs(balanced_accuracy(uniform) - 0.5) <= 1e-15;
        const ConfusionCounts missed = counts(0, 0, 5, 5);
        fixtures_ok &= iou(missed) == 0.0 && f1(missed) == 0.0;
    }

    double worst = 0.0;
    Rng rng(0xc7);
    for (int t = 0; t < 1000; ++t) {
        const ConfusionCounts c =
            counts(rng.uniform_below(1000), rng.uniform_below(1000), rng.uniform_below(1000),
                   rng.uniform_below(1000));
        const double i = iou(c);
        worst = std::max(worst, std::abs(f1(c) - 2.0 * i / (1.0 + i)));
    }

    out.pass = fixtures_ok && worst <= 1e-12;
    std::ostringstream d;
    d << "fixtures exact = " << (fixtures_ok ? "yes" : "no")
      << ", max |f1 - 2*iou/(1+iou)| = " << worst;
    out.detail = d.str();
    return out;
}

// ---------------------------------------------------------------------------
// 8. Pipeline determinism: two train+predict runs, identical bytes.
Outcome criterion_8() {
    Outcome out{8, "train+predict determinism (byte-identical artifacts)"};
    test::TempDir dir("acceptance_det");

    SynthConfig synth;
    synth.n_scenes = 16;
    synth.n_train = 12;
    synth.size = 128;
    synth.seed = 777;
    const DatasetManifest manifest = generate_synthetic_dataset(synth, dir.str("data"));

    TrainOptions opts;
    opts.ensemble.n_learners = 8;
    opts.ensemble.subset_size = 40;
    opts.ensemble.backend = Backend::annealed;
    opts.ensemble.seed = 99;
    opts.backends.anneal.num_reads = 60;
    opts.backends.anneal.sweeps_per_read = 60;
    opts.backends.anneal.top_samples = 20;

    bool identical = true;
    std::string first_model_bytes;
    for (int run = 0; run < 2; ++run) {
        const ModelFile model = train_from_manifest(manifest, opts);
        const std::string model_path = dir.str("model_run" + std::to_string(run) + ".slkq");
        save_model(model, model_path);
        if (run == 0) {
            first_model_bytes = test::slurp(model_path);
        } else if (test::slurp(model_path) != first_model_bytes) {
            identical = false;
        }
        for (const auto& entry : manifest.split("test")) {
            const SegmentationMask mask = predict_entry(model, entry);
            const std::string mask_path =
                dir.str(entry.scene_id + "_run" + std::to_string(run) + ".png");
            write_mask_png(mask_path, mask.pixels);
        }
    }
    for (const auto& entry : manifest.split("test")) {
        const std::string a = test::slurp(dir.str(entry.scene_id + "_run0.png"));
        const std::string b = test::slurp(dir.str(entry.scene_id + "_run1.png"));
        if (a.empty() || a != b) identical = false;
    }

    out.pass = identical;
    out.detail = identical ? "model file and mask PNGs byte-identical across runs"
                           : "artifacts differ between identically seeded runs";
    return out;
}

// ---------------------------------------------------------------------------
// 9. Sampling contract: exactly 25+25 when both classes are plentiful; hard
//    negatives at or below the water VV 10th percentile.
Outcome criterion_9() {
    Outcome out{9, "balanced sampling and hard-negative contract"};
    Rng scene_rng(0xc9);

    bool ok = true;
    std::ostringstream d;
    for (int trial = 0; trial < 10; ++trial) {
        SarScene scene;
        scene.id = "contract_" + std::to_string(trial);
        scene.vv = Image(64, 64);
        scene.vh = Image(64, 64);
        for (std::size_t i = 0; i < scene.vv.size(); ++i) {
            scene.vv[i] = scene_rng.uniform();
            scene.vh[i] = scene_rng.uniform();
        }
        BoolMask truth(64, 64, 0);
        for (int r = 0; r < 12; ++r)  // 768 oil pixels, 3328 water
            for (int c = 0; c < 64; ++c) truth.at(r, c) = 1;

        const auto samples = sample_training_pixels(scene, truth, 5000 + trial);
        int oil = 0, water = 0;
        for (const auto& s : samples) (s.y > 0 ? oil : water)++;
        if (oil != 25 || water != 25) {
            ok = false;
            d << "trial " << trial << ": got " << oil << "+" << water << "; ";
        }

        std::vector<double> water_vv;
        for (int r = 0; r < 64; ++r)
            for (int c = 0; c < 64; ++c)
                if (!truth.at(r, c)) water_vv.push_back(scene.vv.at(r, c));
        const double p10 = percentile_nearest_rank(water_vv, 10.0);
        int hard = 0;
        for (const auto& s : samples)
            if (s.y < 0 && scene.vv.at(s.origin.row, s.origin.col) <= p10) ++hard;
        if (hard < 13) {
            ok = false;
            d << "trial " << trial << ": only " << hard << " hard negatives; ";
        }
    }

    out.pass = ok;
    out.detail = ok ? "25+25 samples with >= 13 hard negatives at or below the water p10 "
                      "on all 10 scenes"
                    : d.str();
    return out;
}

void print_outcome(const Outcome& o) {
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << o.criterion << " ("
              << o.name << "): " << o.detail << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::optional<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 2;
        }
    }

    std::vector<Outcome> outcomes;
    auto want = [&](int n) { return !only || *only == n; };

    if (want(1)) outcomes.push_back(criterion_1());
    if (want(2)) outcomes.push_back(criterion_2());
    if (want(3) || want(4)) {
        if (!only || *only == 3 || *only == 4) {
            const auto both = criteria_3_4();
            outcomes.insert(outcomes.end(), both.begin(), both.end());
        }
    }
    if (want(5)) outcomes.push_back(criterion_5());
    if (want(6)) outcomes.push_back(criterion_6());
    if (want(7)) outcomes.push_back(criterion_7());
    if (want(8)) outcomes.push_back(criterion_8());
    if (want(9)) outcomes.push_back(criterion_9());

    bool all_pass = true;
    for (const auto& o : outcomes) {
        print_outcome(o);
        all_pass = all_pass && o.pass;
    }
    if (outcomes.empty()) {
        std::cerr << "no such criterion\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}
