#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "slick/raster.hpp"
#include "slick/types.hpp"

namespace slick {

struct SarScene;  // scene_io.hpp

// Fixed order of the five per-pixel features.
enum FeatureIndex {
    kFeatVvIntensity = 0,
    kFeatVhVvRatio = 1,
    kFeatEntropyVv = 2,
    kFeatStdVv = 3,
    kFeatGradientVv = 4,
};

extern const std::array<const char*, kFeatureDim> kFeatureNames;

// Min-max scaler fitted on training samples; apply clamps to [0,1].
struct FeatureScaler {
    std::vector<double> shift;  // per-feature minimum
    std::vector<double> scale;  // per-feature range, > 0

    Features apply(const Features& x) const;
    Features invert(const Features& scaled) const;
};

// Per-pixel feature planes plus a validity mask (false on land).
struct FeatureImage {
    int height = 0;
    int width = 0;
    std::array<Image, kFeatureDim> planes;
    BoolMask valid;

    Features at(int r, int c) const {
        Features f(kFeatureDim);
        for (int k = 0; k < kFeatureDim; ++k) f[k] = planes[k].at(r, c);
        return f;
    }
};

// vh / max(vv, 1e-6), capped at 1e6. Total by construction.
double vh_vv_ratio(double vh, double vv);

// Shannon entropy (bits) of the 32-level histogram of each 3x3 window.
Image local_entropy(const Image& raster, int window = 3);

// Population standard deviation of each 3x3 window.
Image local_std(const Image& raster, int window = 3);

// Magnitude of the standard 3x3 Sobel response, reflect padding.
Image sobel_gradient_magnitude(const Image& raster);

// Assembles the five planes from a preprocessed scene; land pixels are
// flagged invalid. Rejects inputs outside [0,1].
FeatureImage extract_feature_image(const SarScene& scene);

FeatureScaler fit_scaler(const std::vector<LabeledSample>& samples);

struct SamplingConfig {
    int max_per_class = 25;
    double hard_negative_fraction = 0.5;  // of the water draw, from the darkest decile
    double dark_decile_pct = 10.0;        // water VV percentile bounding "darkest"
};

// Balanced per-scene pixel sampling with hard-negative mining. `mask` is
// ground truth (true = oil); land pixels are excluded. Deterministic in
// rng_seed. Features are raw (unscaled).
std::vector<LabeledSample> sample_training_pixels(const SarScene& scene,
                                                  const BoolMask& mask,
                                                  std::uint64_t rng_seed,
                                                  const SamplingConfig& cfg = {});

// Audit export: scene_id,row,col,f1..f5,y
void write_samples_csv(const std::string& path, const std::vector<LabeledSample>& samples);

}  // namespace slick
