#pragma once

#include <optional>
#include <vector>

#include "slick/raster.hpp"

namespace slick {

struct SarScene;  // scene_io.hpp

struct PreprocessConfig {
    int median_window = 3;       // odd, >= 1
    double clip_low_pct = 1.0;   // percentiles in [0, 100]
    double clip_high_pct = 99.0;
    double gamma = 1.0;          // > 0
    bool apply_land_mask = true;

    void validate() const;
};

// Nearest-rank percentile of the given values (p in [0,100]); the vector is
// sorted in place.
double percentile_nearest_rank(std::vector<double>& values, double p);

// Median filter with reflect padding; window must be odd. window=1 is identity.
Image median_filter(const Image& input, int window);

// Clip at the low/high nearest-rank percentiles, then rescale linearly to
// [0,1]. Zero-range rasters map to all 0. Percentiles are computed over
// `select` (non-land) pixels when given; the transform applies everywhere.
Image clip_percentiles(const Image& input, double low_pct, double high_pct,
                       const BoolMask* select = nullptr);

// out = in^gamma elementwise; input must be in [0,1].
Image gamma_correct(const Image& input, double gamma);

// median -> clip -> gamma on both bands. Land pixels never influence the
// percentiles and stay flagged on the returned scene.
SarScene preprocess_scene(const SarScene& scene, const PreprocessConfig& cfg);

// Candidate gammas tried by --gamma-sweep.
extern const std::vector<double> kGammaSweepCandidates;

// Inter-percentile contrast (p90 - p10 over non-land pixels) of the raster
// after gamma correction; the sweep picks the candidate maximizing it.
double gamma_contrast(const Image& clipped, double gamma, const BoolMask* land);

}  // namespace slick
