#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "slick/scene_io.hpp"

namespace slick {

// Synthetic speckled-slick generator: multi-look gamma speckle over a flat
// sea, dark ellipses as oil, exact ellipse masks as ground truth. Stands in
// for non-redistributable SAR datasets in tests and benchmarks.
struct SynthConfig {
    int n_scenes = 20;
    int size = 256;
    std::pair<int, int> slick_count_range = {1, 3};
    double slick_darkness = 0.3;   // multiplicative, in (0,1)
    int speckle_looks = 4;         // gamma-distributed multiplicative speckle
    double background_level = 0.6;
    double vh_ratio = 0.25;
    std::uint64_t seed = 0;
    // split assignment: the first n_train entries are train, then n_val,
    // remainder test
    int n_train = 0;
    int n_val = 0;

    void validate() const;
};

struct SynthScene {
    SarScene scene;
    GroundTruthMask truth;
};

// One scene in memory (deterministic per (cfg.seed, index)).
SynthScene generate_synthetic_scene(const SynthConfig& cfg, int index);

// Writes VV/VH (16-bit PNG) and masks (8-bit PNG) under out_dir along with
// manifest.json; returns the manifest.
DatasetManifest generate_synthetic_dataset(const SynthConfig& cfg, const std::string& out_dir);

}  // namespace slick
