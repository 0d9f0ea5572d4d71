#include "slick/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "slick/parallel.hpp"
#include "slick/preprocess.hpp"
#include "slick/rng.hpp"
#include "slick/scene_io.hpp"

namespace slick {

const std::array<const char*, kFeatureDim> kFeatureNames = {
    "vv_intensity", "vh_vv_ratio", "local_entropy_vv", "local_std_vv",
    "gradient_magnitude_vv"};

double vh_vv_ratio(double vh, double vv) {
    const double r = vh / std::max(vv, 1e-6);
    return std::min(r, 1e6);
}

namespace {

constexpr int kEntropyLevels = 32;

int quantize_level(double v) {
    const int q = static_cast<int>(v * kEntropyLevels);
    return std::clamp(q, 0, kEntropyLevels - 1);
}

void check_unit_range(const Image& raster, const char* what) {
    for (std::size_t i = 0; i < raster.size(); ++i)
        if (!(raster[i] >= 0.0 && raster[i] <= 1.0))
            throw std::invalid_argument(std::string(what) +
                                        ": values must lie in [0,1] (preprocess first)");
}

}  // namespace

Image local_entropy(const Image& raster, int window) {
    if (window % 2 == 0 || window < 1)
        throw std::invalid_argument("entropy window must be odd and >= 1");
    const int h = raster.height(), w = raster.width(), half = window / 2;
    const double n_samples = static_cast<double>(window) * window;
    Image out(h, w);
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
        std::array<int, kEntropyLevels> hist{};
        for (std::size_t r = r0; r < r1; ++r) {
            for (int c = 0; c < w; ++c) {
                hist.fill(0);
                for (int dr = -half; dr <= half; ++dr)
                    for (int dc = -half; dc <= half; ++dc)
                        ++hist[quantize_level(raster.at_reflect(static_cast<int>(r) + dr, c + dc))];
                double entropy = 0.0;
                for (int count : hist) {
                    if (count == 0) continue;
                    const double p = count / n_samples;
                    entropy -= p * std::log2(p);
                }
                out.at(static_cast<int>(r), c) = entropy;
            }
        }
    });
    return out;
}

Image local_std(const Image& raster, int window) {
    if (window % 2 == 0 || window < 1)
        throw std::invalid_argument("std window must be odd and >= 1");
    const int h = raster.height(), w = raster.width(), half = window / 2;
    const double n_samples = static_cast<double>(window) * window;
    Image out(h, w);
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r) {
            for (int c = 0; c < w; ++c) {
                // variance is shift-invariant; anchoring on one window value
                // keeps constant windows at exactly zero
                const double ref = raster.at_reflect(static_cast<int>(r) - half, c - half);
                double sum = 0.0;
                for (int dr = -half; dr <= half; ++dr)
                    for (int dc = -half; dc <= half; ++dc)
                        sum += raster.at_reflect(static_cast<int>(r) + dr, c + dc) - ref;
                const double mean = sum / n_samples;
                double var = 0.0;
                for (int dr = -half; dr <= half; ++dr) {
                    for (int dc = -half; dc <= half; ++dc) {
                        const double d =
                            raster.at_reflect(static_cast<int>(r) + dr, c + dc) - ref - mean;
                        var += d * d;
                    }
                }
                out.at(static_cast<int>(r), c) = std::sqrt(var / n_samples);
            }
        }
    });
    return out;
}

Image sobel_gradient_magnitude(const Image& raster) {
    const int h = raster.height(), w = raster.width();
    Image out(h, w);
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
        for (std::size_t rr = r0; rr < r1; ++rr) {
            const int r = static_cast<int>(rr);
            for (int c = 0; c < w; ++c) {
                auto px = [&](int dr, int dc) { return raster.at_reflect(r + dr, c + dc); };
                const double gx = (px(-1, 1) + 2.0 * px(0, 1) + px(1, 1)) -
                                  (px(-1, -1) + 2.0 * px(0, -1) + px(1, -1));
                const double gy = (px(1, -1) + 2.0 * px(1, 0) + px(1, 1)) -
                                  (px(-1, -1) + 2.0 * px(-1, 0) + px(-1, 1));
                out.at(r, c) = std::sqrt(gx * gx + gy * gy);
            }
        }
    });
    return out;
}

FeatureImage extract_feature_image(const SarScene& scene) {
    check_unit_range(scene.vv, "extract_feature_image VV");
    check_unit_range(scene.vh, "extract_feature_image VH");

    const int h = scene.height(), w = scene.width();
    FeatureImage fi;
    fi.height = h;
    fi.width = w;
    fi.planes[kFeatVvIntensity] = scene.vv;
    fi.planes[kFeatVhVvRatio] = Image(h, w);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            fi.planes[kFeatVhVvRatio].at(r, c) = vh_vv_ratio(scene.vh.at(r, c), scene.vv.at(r, c));
    fi.planes[kFeatEntropyVv] = local_entropy(scene.vv, 3);
    fi.planes[kFeatStdVv] = local_std(scene.vv, 3);
    fi.planes[kFeatGradientVv] = sobel_gradient_magnitude(scene.vv);

    fi.valid = BoolMask(h, w, 1);
    if (scene.land_mask.has_value())
        for (std::size_t i = 0; i < fi.valid.size(); ++i)
            fi.valid[i] = (*scene.land_mask)[i] ? 0 : 1;
    return fi;
}

Features FeatureScaler::apply(const Features& x) const {
    if (x.size() != shift.size()) throw std::invalid_argument("scaler dimension mismatch");
    Features out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::clamp((x[i] - shift[i]) / scale[i], 0.0, 1.0);
    return out;
}

Features FeatureScaler::invert(const Features& scaled) const {
    if (scaled.size() != shift.size()) throw std::invalid_argument("scaler dimension mismatch");
    Features out(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) out[i] = scaled[i] * scale[i] + shift[i];
    return out;
}

FeatureScaler fit_scaler(const std::vector<LabeledSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("fit_scaler: empty sample set");
    const std::size_t dim = samples.front().x.size();
    FeatureScaler s;
    s.shift.assign(dim, 0.0);
    s.scale.assign(dim, 1.0);
    for (std::size_t k = 0; k < dim; ++k) {
        double lo = samples.front().x[k], hi = lo;
        for (const auto& smp : samples) {
            lo = std::min(lo, smp.x[k]);
            hi = std::max(hi, smp.x[k]);
        }
        s.shift[k] = lo;
        s.scale[k] = hi > lo ? hi - lo : 1.0;  // constant column -> all map to 0
    }
    return s;
}

std::vector<LabeledSample> sample_training_pixels(const SarScene& scene, const BoolMask& mask,
                                                  std::uint64_t rng_seed,
                                                  const SamplingConfig& cfg) {
    if (!mask.same_shape(scene.height(), scene.width()))
        throw std::invalid_argument("sample_training_pixels: mask/scene shape mismatch");

    const int h = scene.height(), w = scene.width();
    std::vector<std::uint32_t> oil_idx, water_idx;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (scene.is_land(r, c)) continue;
            const auto flat = static_cast<std::uint32_t>(r * w + c);
            if (mask.at(r, c)) oil_idx.push_back(flat);
            else water_idx.push_back(flat);
        }
    }

    Rng rng(rng_seed);
    const FeatureImage fi = extract_feature_image(scene);

    auto take = [&](std::vector<std::uint32_t>& pool, std::size_t count) {
        // partial Fisher-Yates: draw `count` without replacement
        std::vector<std::uint32_t> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count && i < pool.size(); ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(pool.size() - i));
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    };

    const auto n_oil = static_cast<std::size_t>(cfg.max_per_class);
    std::vector<std::uint32_t> chosen = take(oil_idx, n_oil);
    const std::size_t oil_count = chosen.size();

    // Water draw: half hard negatives from the darkest VV decile, half
    // uniform from the rest; shortfalls on either side fill from the other.
    std::vector<std::uint32_t> hard_pool, rest_pool;
    if (!water_idx.empty()) {
        std::vector<double> water_vv;
        water_vv.reserve(water_idx.size());
        for (auto idx : water_idx) water_vv.push_back(scene.vv[idx]);
        const double p10 = percentile_nearest_rank(water_vv, cfg.dark_decile_pct);
        for (auto idx : water_idx) {
            if (scene.vv[idx] <= p10) hard_pool.push_back(idx);
            else rest_pool.push_back(idx);
        }
    }
    const std::size_t n_water =
        std::min(static_cast<std::size_t>(cfg.max_per_class), water_idx.size());
    std::size_t n_hard = std::min(
        static_cast<std::size_t>(std::ceil(n_water * cfg.hard_negative_fraction)),
        hard_pool.size());
    std::size_t n_rest = std::min(n_water - n_hard, rest_pool.size());
    n_hard = std::min(n_water - n_rest, hard_pool.size());  // top up if rest ran short

    for (auto idx : take(hard_pool, n_hard)) chosen.push_back(idx);
    for (auto idx : take(rest_pool, n_rest)) chosen.push_back(idx);

    std::vector<LabeledSample> samples;
    samples.reserve(chosen.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        const int r = static_cast<int>(chosen[i] / w);
        const int c = static_cast<int>(chosen[i] % w);
        LabeledSample s;
        s.x = fi.at(r, c);
        s.y = i < oil_count ? +1 : -1;
        s.origin = {scene.id, r, c};
        samples.push_back(std::move(s));
    }
    return samples;
}

void write_samples_csv(const std::string& path, const std::vector<LabeledSample>& samples) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "scene_id,row,col,f1,f2,f3,f4,f5,y\n";
    out.precision(17);
    for (const auto& s : samples) {
        out << s.origin.scene_id << ',' << s.origin.row << ',' << s.origin.col;
        for (double v : s.x) out << ',' << v;
        out << ',' << s.y << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace slick
