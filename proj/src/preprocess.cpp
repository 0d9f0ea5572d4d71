#include "slick/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slick/parallel.hpp"
#include "slick/scene_io.hpp"

namespace slick {

const std::vector<double> kGammaSweepCandidates = {0.5, 0.75, 1.0, 1.5, 2.0};

void PreprocessConfig::validate() const {
    if (median_window < 1 || median_window % 2 == 0)
        throw std::invalid_argument("median_window must be odd and >= 1");
    if (clip_low_pct < 0.0 || clip_high_pct > 100.0 || clip_low_pct >= clip_high_pct)
        throw std::invalid_argument("require 0 <= clip_low_pct < clip_high_pct <= 100");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
}

double percentile_nearest_rank(std::vector<double>& values, double p) {
    if (values.empty()) throw std::invalid_argument("percentile of empty set");
    if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile must be in [0,100]");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    const std::size_t idx = rank == 0 ? 0 : rank - 1;
    return values[std::min(idx, values.size() - 1)];
}

Image median_filter(const Image& input, int window) {
    if (window % 2 == 0) throw std::invalid_argument("median window must be odd");
    if (window < 1) throw std::invalid_argument("median window must be >= 1");
    if (window > std::min(input.height(), input.width()))
        throw std::invalid_argument("median window exceeds raster size");
    if (window == 1) return input;

    const int h = input.height(), w = input.width(), half = window / 2;
    Image out(h, w);
    parallel_for(static_cast<std::size_t>(h), [&](std::size_t r0, std::size_t r1) {
        std::vector<double> buf(static_cast<std::size_t>(window) * window);
        for (std::size_t r = r0; r < r1; ++r) {
            for (int c = 0; c < w; ++c) {
                std::size_t k = 0;
                for (int dr = -half; dr <= half; ++dr)
                    for (int dc = -half; dc <= half; ++dc)
                        buf[k++] = input.at_reflect(static_cast<int>(r) + dr, c + dc);
                auto mid = buf.begin() + buf.size() / 2;
                std::nth_element(buf.begin(), mid, buf.end());
                out.at(static_cast<int>(r), c) = *mid;
            }
        }
    });
    return out;
}

Image clip_percentiles(const Image& input, double low_pct, double high_pct,
                       const BoolMask* select) {
    if (low_pct >= high_pct) throw std::invalid_argument("clip: low must be < high");
    if (input.empty()) throw std::invalid_argument("clip: empty raster");

    std::vector<double> pool;
    pool.reserve(input.size());
    if (select) {
        for (std::size_t i = 0; i < input.size(); ++i)
            if ((*select)[i]) pool.push_back(input[i]);
    } else {
        pool.assign(input.data().begin(), input.data().end());
    }
    Image out(input.height(), input.width());
    if (pool.empty()) return out;  // fully excluded raster: all zeros

    const double lo = percentile_nearest_rank(pool, low_pct);
    const double hi = percentile_nearest_rank(pool, high_pct);
    const double range = hi - lo;
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double v = std::clamp(input[i], lo, hi);
        out[i] = range > 0.0 ? (v - lo) / range : 0.0;
    }
    return out;
}

Image gamma_correct(const Image& input, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    Image out(input.height(), input.width());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double v = input[i];
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("gamma_correct expects values in [0,1]");
        out[i] = std::pow(v, gamma);
    }
    return out;
}

SarScene preprocess_scene(const SarScene& scene, const PreprocessConfig& cfg) {
    cfg.validate();
    scene.validate();

    const BoolMask* land = nullptr;
    BoolMask sea;
    if (cfg.apply_land_mask && scene.land_mask.has_value()) {
        // selector for percentile pools: true = keep (non-land)
        sea = BoolMask(scene.height(), scene.width());
        for (std::size_t i = 0; i < sea.size(); ++i)
            sea[i] = (*scene.land_mask)[i] ? 0 : 1;
        land = &sea;
    }

    auto run_band = [&](const Image& band) {
        Image img = median_filter(band, cfg.median_window);
        img = clip_percentiles(img, cfg.clip_low_pct, cfg.clip_high_pct, land);
        return gamma_correct(img, cfg.gamma);
    };

    SarScene out;
    out.id = scene.id;
    out.vv = run_band(scene.vv);
    out.vh = run_band(scene.vh);
    if (cfg.apply_land_mask && scene.land_mask.has_value()) out.land_mask = scene.land_mask;
    return out;
}

double gamma_contrast(const Image& clipped, double gamma, const BoolMask* land) {
    std::vector<double> pool;
    pool.reserve(clipped.size());
    for (std::size_t i = 0; i < clipped.size(); ++i)
        if (!land || !(*land)[i]) pool.push_back(std::pow(clipped[i], gamma));
    if (pool.empty()) return 0.0;
    std::vector<double> tmp = pool;
    const double p10 = percentile_nearest_rank(tmp, 10.0);
    const double p90 = percentile_nearest_rank(pool, 90.0);
    return p90 - p10;
}

}  // namespace slick
