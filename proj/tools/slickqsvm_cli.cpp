// slickqsvm: quantum-assisted SVM bagging for SAR oil-slick segmentation.
// Subcommands: synth | preprocess | train | predict | evaluate | bench.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "slick/ensemble.hpp"
#include "slick/eval.hpp"
#include "slick/image_io.hpp"
#include "slick/parallel.hpp"
#include "slick/pipeline.hpp"
#include "slick/preprocess.hpp"
#include "slick/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace slick;

namespace {

// JSON config files mirroring the CLI flags: top-level keys are global
// options, nested objects hold per-subcommand flags.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc;
        input >> doc;
        if (!doc.is_object()) throw CLI::FileError("config must be a JSON object");
        std::vector<CLI::ConfigItem> items;
        walk(doc, {}, items);
        return items;
    }

private:
    static void walk(const json& node, const std::vector<std::string>& parents,
                     std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object()) {
                auto deeper = parents;
                deeper.push_back(key);
                walk(value, deeper, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }

    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }
};

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = hardware concurrency
};

struct PreprocessFlags {
    PreprocessConfig cfg;
    bool gamma_sweep = false;
    bool no_land_mask = false;
    std::vector<int> working = {256, 256};

    void attach(CLI::App* cmd) {
        cmd->add_option("--median-window", cfg.median_window,
                        "odd median filter window (1 disables)")
            ->capture_default_str();
        cmd->add_option("--clip", clip_, "low/high clip percentiles")
            ->expected(2)
            ->capture_default_str();
        cmd->add_option("--gamma", cfg.gamma, "gamma correction exponent")
            ->capture_default_str();
        cmd->add_flag("--gamma-sweep", gamma_sweep,
                      "pick gamma from {0.5,0.75,1,1.5,2} by inter-percentile contrast");
        cmd->add_flag("--no-land-mask", no_land_mask, "ignore land masks during preprocessing");
        cmd->add_option("--working-size", working, "working raster size (height width)")
            ->expected(2);
    }

    void resolve() {
        cfg.clip_low_pct = clip_[0];
        cfg.clip_high_pct = clip_[1];
        cfg.apply_land_mask = !no_land_mask;
        cfg.validate();
    }

    WorkingSize working_size() const { return {working.at(0), working.at(1)}; }

private:
    std::vector<double> clip_ = {1.0, 99.0};
};

struct TrainFlags {
    PreprocessFlags pre;
    std::string backend = "classical";
    EnsembleConfig ensemble;
    BackendConfigs backends;
    std::string aggregation = "mean_decision";

    void attach(CLI::App* cmd) {
        pre.attach(cmd);
        cmd->add_option("--backend", backend, "classical|annealed|gate_kernel")
            ->check(CLI::IsMember({"classical", "annealed", "gate_kernel"}))
            ->capture_default_str();
        cmd->add_option("--n-learners", ensemble.n_learners, "bagging ensemble size")
            ->capture_default_str();
        cmd->add_option("--subset-size", ensemble.subset_size,
                        "disjoint training subset size per learner")
            ->capture_default_str();
        cmd->add_option("--aggregation", aggregation, "mean_decision|majority_vote")
            ->check(CLI::IsMember({"mean_decision", "majority_vote"}))
            ->capture_default_str();
        cmd->add_option("--box-c", backends.svm.box_C, "SVM box constraint C")
            ->capture_default_str();
        cmd->add_option("--rbf-gamma", backends.kernel.rbf_gamma, "RBF kernel gamma")
            ->capture_default_str();
        cmd->add_option("--bits-per-alpha", backends.encoding.bits_per_alpha,
                        "QUBO bits per coefficient (K)")
            ->capture_default_str();
        cmd->add_option("--encoding-base", backends.encoding.base, "QUBO positional base (B)")
            ->capture_default_str();
        cmd->add_option("--penalty", backends.encoding.penalty,
                        "QUBO equality-constraint penalty (xi)")
            ->capture_default_str();
        cmd->add_option("--reads", backends.anneal.num_reads, "annealing reads per learner")
            ->capture_default_str();
        cmd->add_option("--top-samples", backends.anneal.top_samples,
                        "lowest-energy reads retained for decoding")
            ->capture_default_str();
        cmd->add_option("--sweeps", backends.anneal.sweeps_per_read,
                        "Metropolis sweeps per read")
            ->capture_default_str();
        cmd->add_option("--beta-min", backends.anneal.beta_min, "initial inverse temperature")
            ->capture_default_str();
        cmd->add_option("--beta-max", backends.anneal.beta_max, "final inverse temperature")
            ->capture_default_str();
    }

    TrainOptions resolve(std::uint64_t seed) {
        pre.resolve();
        TrainOptions opts;
        opts.ensemble = ensemble;
        opts.ensemble.backend = backend_from_string(backend);
        opts.ensemble.aggregation = aggregation_from_string(aggregation);
        opts.ensemble.seed = seed;
        opts.ensemble.validate();
        opts.backends = backends;
        opts.backends.encoding.validate();
        opts.backends.anneal.validate();
        opts.preprocess = pre.cfg;
        opts.working_size = pre.working_size();
        opts.gamma_sweep = pre.gamma_sweep;
        return opts;
    }
};

json preprocess_json(const PreprocessConfig& p) {
    return {{"median_window", p.median_window},
            {"clip_low_pct", p.clip_low_pct},
            {"clip_high_pct", p.clip_high_pct},
            {"gamma", p.gamma},
            {"apply_land_mask", p.apply_land_mask}};
}

json train_options_json(const TrainOptions& o) {
    return {{"backend", to_string(o.ensemble.backend)},
            {"n_learners", o.ensemble.n_learners},
            {"subset_size", o.ensemble.subset_size},
            {"aggregation", to_string(o.ensemble.aggregation)},
            {"seed", o.ensemble.seed},
            {"preprocess", preprocess_json(o.preprocess)},
            {"gamma_sweep", o.gamma_sweep},
            {"working_size", {o.working_size.height, o.working_size.width}},
            {"svm", {{"box_c", o.backends.svm.box_C}, {"rbf_gamma", o.backends.kernel.rbf_gamma}}},
            {"encoding",
             {{"bits_per_alpha", o.backends.encoding.bits_per_alpha},
              {"base", o.backends.encoding.base},
              {"penalty", o.backends.encoding.penalty}}},
            {"anneal",
             {{"num_reads", o.backends.anneal.num_reads},
              {"top_samples", o.backends.anneal.top_samples},
              {"sweeps_per_read", o.backends.anneal.sweeps_per_read},
              {"beta_min", o.backends.anneal.beta_min},
              {"beta_max", o.backends.anneal.beta_max}}}};
}

void print_resolved(const std::string& subcommand, const json& cfg, const GlobalOptions& g) {
    json doc = cfg;
    doc["subcommand"] = subcommand;
    doc["seed"] = g.seed;
    doc["threads"] = worker_threads();
    std::cerr << "resolved config: " << doc.dump() << "\n";
}

ModelFile train_and_save(const DatasetManifest& manifest, TrainOptions opts,
                         const std::string& out_path) {
    TrainReport report;
    const ModelFile model = train_from_manifest(manifest, opts, &report);
    save_model(model, out_path);
    const std::string report_path = out_path + ".train_report.json";
    std::ofstream rep(report_path);
    rep << train_report_json(report, model) << "\n";
    std::cout << "model written to " << out_path << " (" << model.learners.size()
              << " learners, " << report.learners_dropped << " dropped)\n";
    std::cout << "training report written to " << report_path << "\n";
    if (opts.gamma_sweep)
        std::cout << "gamma sweep selected gamma = " << model.preprocess.gamma << "\n";
    return model;
}

// ------------------------------------------------------------- subcommands

int run_synth(const GlobalOptions& g, SynthConfig cfg, const std::string& out_dir) {
    cfg.seed = g.seed;
    print_resolved("synth",
                   {{"out", out_dir},
                    {"n_scenes", cfg.n_scenes},
                    {"n_train", cfg.n_train},
                    {"n_val", cfg.n_val},
                    {"size", cfg.size},
                    {"slick_count_range", {cfg.slick_count_range.first, cfg.slick_count_range.second}},
                    {"slick_darkness", cfg.slick_darkness},
                    {"speckle_looks", cfg.speckle_looks},
                    {"background_level", cfg.background_level},
                    {"vh_ratio", cfg.vh_ratio}},
                   g);
    const DatasetManifest manifest = generate_synthetic_dataset(cfg, out_dir);
    std::cout << "wrote " << manifest.entries.size() << " scenes under " << out_dir << "\n";
    std::cout << "manifest: " << (fs::path(out_dir) / "manifest.json").string() << "\n";
    return 0;
}

int run_preprocess(const GlobalOptions& g, PreprocessFlags& flags, const std::string& manifest_path,
                   const std::string& scene_id, const std::string& split,
                   const std::string& out_dir) {
    flags.resolve();
    print_resolved("preprocess",
                   {{"manifest", manifest_path},
                    {"scene", scene_id},
                    {"split", split},
                    {"out", out_dir},
                    {"preprocess", preprocess_json(flags.cfg)},
                    {"gamma_sweep", flags.gamma_sweep}},
                   g);

    const DatasetManifest manifest = load_manifest(manifest_path);
    std::vector<ManifestEntry> entries =
        split.empty() ? manifest.entries : manifest.split(split);
    if (!scene_id.empty()) {
        std::erase_if(entries, [&](const ManifestEntry& e) { return e.scene_id != scene_id; });
        if (entries.empty()) throw std::runtime_error("scene '" + scene_id + "' not in manifest");
    }
    if (entries.empty()) throw std::runtime_error("no scenes selected");

    PreprocessConfig cfg = flags.cfg;
    if (flags.gamma_sweep) {
        TrainOptions opts;
        opts.preprocess = flags.cfg;
        opts.working_size = flags.working_size();
        cfg.gamma = sweep_gamma(entries, opts);
        std::cout << "gamma sweep selected gamma = " << cfg.gamma << "\n";
    }

    fs::create_directories(out_dir);
    for (const auto& entry : entries) {
        const SarScene scene = preprocess_scene(load_scene(entry, flags.working_size()), cfg);
        write_png_gray16(out_dir + "/" + entry.scene_id + "_vv.png", quantize16(scene.vv));
        write_png_gray16(out_dir + "/" + entry.scene_id + "_vh.png", quantize16(scene.vh));
        std::cout << "preprocessed " << entry.scene_id << "\n";
    }
    return 0;
}

int run_train(const GlobalOptions& g, TrainFlags& flags, const std::string& manifest_path,
              const std::string& out_path, const std::string& samples_csv,
              const std::string& qubo_out) {
    TrainOptions opts = flags.resolve(g.seed);
    print_resolved("train", train_options_json(opts), g);
    const DatasetManifest manifest = load_manifest(manifest_path);
    const ModelFile model = train_and_save(manifest, opts, out_path);

    if (!samples_csv.empty() || !qubo_out.empty()) {
        // replay the deterministic sampling/partition for the audit exports
        TrainOptions resolved = opts;
        resolved.preprocess = model.preprocess;
        const auto pool = collect_training_pool(manifest.split("train"), resolved);
        if (!samples_csv.empty()) {
            write_samples_csv(samples_csv, pool);
            std::cout << "training samples exported to " << samples_csv << "\n";
        }
        if (!qubo_out.empty()) {
            const FeatureScaler scaler = fit_scaler(pool);
            std::vector<LabeledSample> scaled = pool;
            for (auto& s : scaled) s.x = scaler.apply(s.x);
            const auto subsets = partition_disjoint_subsets(scaled, resolved.ensemble);
            if (subsets.empty()) throw std::runtime_error("no subset available for QUBO export");
            const QuboProblem q =
                build_qubo(subsets.front(), resolved.backends.kernel, resolved.backends.encoding);
            std::ofstream out(qubo_out);
            if (!out) throw std::runtime_error(qubo_out + ": cannot write QUBO");
            out << qubo_to_text(q);
            std::cout << "first-subset QUBO exported to " << qubo_out << "\n";
        }
    }
    return 0;
}

int run_predict(const GlobalOptions& g, const std::string& model_path,
                const std::string& manifest_path, const std::string& split,
                const std::string& vv_path, const std::string& vh_path,
                const std::string& land_path, const std::string& out_dir) {
    print_resolved("predict",
                   {{"model", model_path},
                    {"manifest", manifest_path},
                    {"split", split},
                    {"vv", vv_path},
                    {"out", out_dir}},
                   g);
    const ModelFile model = load_model(model_path);

    std::vector<ManifestEntry> entries;
    if (!manifest_path.empty()) {
        const DatasetManifest manifest = load_manifest(manifest_path);
        entries = split.empty() ? manifest.entries : manifest.split(split);
    } else {
        if (vv_path.empty() || vh_path.empty())
            throw std::runtime_error("predict needs --manifest or both --vv and --vh");
        ManifestEntry e;
        e.scene_id = fs::path(vv_path).stem().string();
        e.vv_path = vv_path;
        e.vh_path = vh_path;
        e.land_mask_path = land_path;
        e.split = "test";
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw std::runtime_error("no scenes selected");

    fs::create_directories(out_dir);
    for (const auto& entry : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        const SegmentationMask mask = predict_entry(model, entry);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string path = out_dir + "/" + entry.scene_id + "_mask.png";
        write_mask_png(path, mask.pixels);
        std::cout << entry.scene_id << ": " << secs << " s -> " << path << "\n";
    }
    return 0;
}

int run_evaluate(const GlobalOptions& g, const std::string& model_path,
                 const std::string& manifest_path, const std::string& split,
                 const std::string& out_path, const std::string& csv_path) {
    print_resolved("evaluate",
                   {{"model", model_path},
                    {"manifest", manifest_path},
                    {"split", split},
                    {"out", out_path},
                    {"csv", csv_path}},
                   g);
    const ModelFile model = load_model(model_path);
    const DatasetManifest manifest = load_manifest(manifest_path);
    const auto entries = manifest.split(split);
    if (entries.empty()) throw std::runtime_error("split '" + split + "' is empty");

    const EvalReport report = evaluate_model(model, entries, model.working_size);
    const std::string text = report_to_json(report);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error(out_path + ": cannot write report");
        out << text << "\n";
        std::cout << "report written to " << out_path << "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error(csv_path + ": cannot write CSV");
        csv << report_to_csv(report);
        std::cout << "per-scene CSV written to " << csv_path << "\n";
    }
    // summary on stderr so a piped report stays valid JSON
    std::cerr << "aggregate IoU " << report.aggregate_iou << ", F1 " << report.aggregate_f1
              << ", BA " << report.aggregate_balanced_accuracy << "\n";
    return 0;
}

int run_bench(const GlobalOptions& g, TrainFlags& flags, const std::string& manifest_path,
              std::vector<std::string> backends, const std::string& split, int repeat,
              const std::string& out_path, const std::string& models_dir, bool train_first) {
    TrainOptions base = flags.resolve(g.seed);
    json cfg = train_options_json(base);
    cfg["backends"] = backends;
    cfg["repeat"] = repeat;
    cfg["train_first"] = train_first;
    print_resolved("bench", cfg, g);

    const DatasetManifest manifest = load_manifest(manifest_path);
    const auto entries = manifest.split(split);
    if (entries.empty()) throw std::runtime_error("split '" + split + "' is empty");

    fs::create_directories(models_dir);
    std::vector<BenchRow> rows;
    for (const auto& name : backends) {
        const std::string model_path = models_dir + "/" + name + ".slkq";
        double train_s = 0.0;
        ModelFile model;
        if (train_first) {
            TrainOptions opts = base;
            opts.ensemble.backend = backend_from_string(name);
            const auto t0 = std::chrono::steady_clock::now();
            model = train_from_manifest(manifest, opts);
            train_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            save_model(model, model_path);
        } else {
            if (!fs::exists(model_path))
                throw std::runtime_error("no model at " + model_path +
                                         " (train one or pass --train-first)");
            model = load_model(model_path);
        }

        BenchRow row;
        row.model = name;
        row.training_seconds = train_s;
        double inference_sum = 0.0;
        for (int r = 0; r < repeat; ++r) {
            const EvalReport eval = evaluate_model(model, entries, model.working_size);
            inference_sum += eval.mean_inference_seconds_per_image;
            row.iou = eval.aggregate_iou;
            row.f1 = eval.aggregate_f1;
            row.balanced_accuracy = eval.aggregate_balanced_accuracy;
        }
        row.inference_seconds_per_image = inference_sum / repeat;
        rows.push_back(row);
        std::cerr << name << ": IoU " << row.iou << ", " << row.inference_seconds_per_image
                  << " s/image, trained in " << train_s << " s\n";
    }

    const std::string table = bench_markdown_table(rows);
    if (out_path.empty()) {
        std::cout << table;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error(out_path + ": cannot write table");
        out << table;
        std::cout << "benchmark table written to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-assisted SVM bagging for SAR oil-slick segmentation"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file mirroring the CLI flags");

    GlobalOptions g;
    app.add_option("--seed", g.seed, "global RNG seed")
        ->envname("SLICKQSVM_SEED")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (0 = hardware)")
        ->envname("SLICKQSVM_THREADS")
        ->capture_default_str();

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic speckled-slick dataset");
    SynthConfig synth_cfg;
    std::string synth_out;
    std::vector<int> slick_range = {1, 3};
    synth_cmd->add_option("--out", synth_out, "output directory")->required();
    synth_cmd->add_option("--scenes", synth_cfg.n_scenes, "total scene count")
        ->capture_default_str();
    synth_cmd->add_option("--train", synth_cfg.n_train, "scenes assigned to the train split")
        ->capture_default_str();
    synth_cmd->add_option("--val", synth_cfg.n_val, "scenes assigned to the val split")
        ->capture_default_str();
    synth_cmd->add_option("--size", synth_cfg.size, "raster size")->capture_default_str();
    synth_cmd->add_option("--slicks", slick_range, "min/max slick count per scene")->expected(2);
    synth_cmd->add_option("--darkness", synth_cfg.slick_darkness, "slick intensity factor")
        ->capture_default_str();
    synth_cmd->add_option("--looks", synth_cfg.speckle_looks, "speckle looks")
        ->capture_default_str();
    synth_cmd->add_option("--background", synth_cfg.background_level, "sea background level")
        ->capture_default_str();
    synth_cmd->add_option("--vh-ratio", synth_cfg.vh_ratio, "VH/VV intensity ratio")
        ->capture_default_str();

    // preprocess
    auto* pre_cmd = app.add_subcommand("preprocess", "run the preprocessing chain, write PNGs");
    PreprocessFlags pre_flags;
    std::string pre_manifest, pre_scene, pre_split, pre_out = "preprocessed";
    pre_cmd->add_option("--manifest", pre_manifest, "dataset manifest")->required();
    pre_cmd->add_option("--scene", pre_scene, "only this scene id");
    pre_cmd->add_option("--split", pre_split, "only this split");
    pre_cmd->add_option("--out", pre_out, "output directory")->capture_default_str();
    pre_flags.attach(pre_cmd);

    // train
    auto* train_cmd = app.add_subcommand("train", "train a bagging ensemble");
    TrainFlags train_flags;
    std::string train_manifest, train_out = "model.slkq", train_samples_csv, train_qubo_out;
    train_cmd->add_option("--manifest", train_manifest, "dataset manifest")->required();
    train_cmd->add_option("--out", train_out, "output model path")->capture_default_str();
    train_cmd->add_option("--export-samples", train_samples_csv,
                          "audit CSV of the sampled training pixels");
    train_cmd->add_option("--export-qubo", train_qubo_out,
                          "write the first subset's QUBO in sparse text form (annealed)");
    train_flags.attach(train_cmd);

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "segment scenes with a trained model");
    std::string predict_model, predict_manifest, predict_split, predict_vv, predict_vh,
        predict_land, predict_out = "masks";
    predict_cmd->add_option("--model", predict_model, "trained model file")->required();
    predict_cmd->add_option("--manifest", predict_manifest, "dataset manifest");
    predict_cmd->add_option("--split", predict_split, "restrict to a split");
    predict_cmd->add_option("--vv", predict_vv, "single-scene VV raster");
    predict_cmd->add_option("--vh", predict_vh, "single-scene VH raster");
    predict_cmd->add_option("--land", predict_land, "single-scene land mask");
    predict_cmd->add_option("--out", predict_out, "mask output directory")
        ->capture_default_str();

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "compute IoU/F1/BA against ground truth");
    std::string eval_model, eval_manifest, eval_split = "test", eval_out, eval_csv;
    eval_cmd->add_option("--model", eval_model, "trained model file")->required();
    eval_cmd->add_option("--manifest", eval_manifest, "dataset manifest")->required();
    eval_cmd->add_option("--split", eval_split, "split to evaluate")->capture_default_str();
    eval_cmd->add_option("--out", eval_out, "write the JSON report here (default stdout)");
    eval_cmd->add_option("--csv", eval_csv, "write per-scene CSV here");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "train and time backends, emit a Markdown table");
    TrainFlags bench_flags;
    std::string bench_manifest, bench_split = "test", bench_out, bench_models = "bench_models";
    std::vector<std::string> bench_backends = {"classical", "annealed", "gate_kernel"};
    int bench_repeat = 1;
    bool bench_train_first = false;
    bench_cmd->add_option("--manifest", bench_manifest, "dataset manifest")->required();
    bench_cmd->add_flag("--train-first", bench_train_first,
                        "train each backend before timing (otherwise load from --models-dir)");
    bench_cmd->add_option("--backends", bench_backends, "backends to benchmark")
        ->check(CLI::IsMember({"classical", "annealed", "gate_kernel"}));
    bench_cmd->add_option("--split", bench_split, "split to evaluate")->capture_default_str();
    bench_cmd->add_option("--repeat", bench_repeat, "timing repetitions (mean reported)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "write the Markdown table here (default stdout)");
    bench_cmd->add_option("--models-dir", bench_models, "directory for the trained models")
        ->capture_default_str();
    bench_flags.attach(bench_cmd);

    CLI11_PARSE(app, argc, argv);

    set_worker_threads(g.threads);
    try {
        if (synth_cmd->parsed()) {
            synth_cfg.slick_count_range = {slick_range.at(0), slick_range.at(1)};
            return run_synth(g, synth_cfg, synth_out);
        }
        if (pre_cmd->parsed())
            return run_preprocess(g, pre_flags, pre_manifest, pre_scene, pre_split, pre_out);
        if (train_cmd->parsed())
            return run_train(g, train_flags, train_manifest, train_out, train_samples_csv,
                             train_qubo_out);
        if (predict_cmd->parsed())
            return run_predict(g, predict_model, predict_manifest, predict_split, predict_vv,
                               predict_vh, predict_land, predict_out);
        if (eval_cmd->parsed())
            return run_evaluate(g, eval_model, eval_manifest, eval_split, eval_out, eval_csv);
        if (bench_cmd->parsed())
            return run_bench(g, bench_flags, bench_manifest, bench_backends, bench_split,
                             bench_repeat, bench_out, bench_models, bench_train_first);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
