#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slick/features.hpp"
#include "slick/preprocess.hpp"
#include "slick/qubo_annealer.hpp"
#include "slick/raster.hpp"
#include "slick/svm_core.hpp"
#include "slick/types.hpp"

namespace slick {

// Co-registered VV/VH intensity rasters for one acquisition, plus an
// optional land mask (true = land). Values are finite and >= 0; after
// ingestion both bands are at the configured working size.
struct SarScene {
    std::string id;
    Image vv;
    Image vh;
    std::optional<BoolMask> land_mask;

    int height() const { return vv.height(); }
    int width() const { return vv.width(); }
    bool is_land(int r, int c) const {
        return land_mask.has_value() && land_mask->at(r, c) != 0;
    }
    void validate() const;
};

struct GroundTruthMask {
    BoolMask pixels;  // true = oil

    int height() const { return pixels.height(); }
    int width() const { return pixels.width(); }
};

struct ManifestEntry {
    std::string scene_id;
    std::string vv_path;
    std::string vh_path;
    std::string mask_path;       // empty = absent
    std::string land_mask_path;  // empty = absent
    std::string split;           // train | val | test
};

struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    std::vector<ManifestEntry> split(const std::string& name) const;
};

// Manifest JSON: top-level array of entry objects. Relative paths resolve
// against the manifest's directory.
DatasetManifest load_manifest(const std::string& path);
void save_manifest(const std::string& path, const DatasetManifest& manifest);

struct WorkingSize {
    int height = 256;
    int width = 256;
};

// Loads and validates one scene: VV/VH resampled to working_size by
// area-averaging, land mask by nearest-neighbor.
SarScene load_scene(const ManifestEntry& entry, WorkingSize working_size = {});

// Boolean mask at working_size; a downscaled cell is oil iff >= 50% of the
// source area it covers is oil.
GroundTruthMask load_mask(const std::string& path, WorkingSize working_size = {});

// Area-averaging resample (exact block mean for integer ratios).
Image resample_area(const Image& src, int out_height, int out_width);
BoolMask resample_mask_majority(const BoolMask& src, int out_height, int out_width);
BoolMask resample_mask_nearest(const BoolMask& src, int out_height, int out_width);

// ------------------------------------------------------------------ model

inline constexpr std::uint32_t kModelFormatVersion = 1;

// Everything needed to replay training-time preprocessing and evaluate the
// ensemble. Serialized as a versioned, CRC-checked binary container; see
// docs/model_format.md.
struct ModelFile {
    std::uint32_t format_version = kModelFormatVersion;
    Backend backend = Backend::classical;
    WorkingSize working_size;
    PreprocessConfig preprocess;
    FeatureScaler feature_scaler;
    EnsembleConfig ensemble_config;
    SvmTrainConfig svm_config;
    KernelSpec kernel;        // kernel family shared by all learners
    BinaryEncoding encoding;  // annealed backend only
    AnnealConfig anneal;      // annealed backend only
    std::uint64_t rng_seed = 0;
    std::vector<WeakLearner> learners;

    void validate() const;
};

void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

}  // namespace slick
