#include "slick/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "slick/image_io.hpp"
#include "slick/rng.hpp"

namespace slick {

namespace fs = std::filesystem;

void SynthConfig::validate() const {
    if (n_scenes < 1) throw std::invalid_argument("synth: n_scenes must be >= 1");
    if (size < 8) throw std::invalid_argument("synth: size must be >= 8");
    if (slick_count_range.first < 0 || slick_count_range.second < slick_count_range.first)
        throw std::invalid_argument("synth: bad slick_count_range");
    if (!(slick_darkness > 0.0 && slick_darkness < 1.0))
        throw std::invalid_argument("synth: slick_darkness must be in (0,1)");
    if (speckle_looks < 1) throw std::invalid_argument("synth: speckle_looks must be >= 1");
    if (!(background_level > 0.0)) throw std::invalid_argument("synth: background_level must be > 0");
    if (!(vh_ratio > 0.0)) throw std::invalid_argument("synth: vh_ratio must be > 0");
    if (n_train < 0 || n_val < 0 || n_train + n_val > n_scenes)
        throw std::invalid_argument("synth: split counts exceed n_scenes");
}

SynthScene generate_synthetic_scene(const SynthConfig& cfg, int index) {
    cfg.validate();
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(index)));
    const int n = cfg.size;

    BoolMask oil(n, n, 0);
    const int lo = cfg.slick_count_range.first, hi = cfg.slick_count_range.second;
    const int n_slicks = lo + static_cast<int>(rng.uniform_below(hi - lo + 1));
    for (int s = 0; s < n_slicks; ++s) {
        const double cx = rng.uniform(0.15 * n, 0.85 * n);
        const double cy = rng.uniform(0.15 * n, 0.85 * n);
        const double a = rng.uniform(0.04 * n, 0.16 * n);  // semi-axes
        const double b = rng.uniform(0.03 * n, 0.5 * a + 0.03 * n);
        const double phi = rng.uniform(0.0, 3.14159265358979323846);
        const double cphi = std::cos(phi), sphi = std::sin(phi);
        const int r0 = std::max(0, static_cast<int>(cy - a - 1));
        const int r1 = std::min(n - 1, static_cast<int>(cy + a + 1));
        for (int r = r0; r <= r1; ++r) {
            for (int c = 0; c < n; ++c) {
                const double dx = c - cx, dy = r - cy;
                const double u = (dx * cphi + dy * sphi) / a;
                const double v = (-dx * sphi + dy * cphi) / b;
                if (u * u + v * v <= 1.0) oil.at(r, c) = 1;
            }
        }
    }

    SynthScene out;
    out.scene.id = "synth_" + std::to_string(index);
    out.scene.vv = Image(n, n);
    out.scene.vh = Image(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double base =
                cfg.background_level * (oil.at(r, c) ? cfg.slick_darkness : 1.0);
            const double vv = base * rng.speckle(cfg.speckle_looks);
            const double vh = cfg.vh_ratio * vv * rng.speckle(cfg.speckle_looks);
            out.scene.vv.at(r, c) = std::min(1.0, vv);
            out.scene.vh.at(r, c) = std::min(1.0, vh);
        }
    }
    out.truth.pixels = std::move(oil);
    return out;
}

DatasetManifest generate_synthetic_dataset(const SynthConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    fs::create_directories(out_dir);

    DatasetManifest manifest;
    for (int i = 0; i < cfg.n_scenes; ++i) {
        const SynthScene s = generate_synthetic_scene(cfg, i);
        const std::string stem = s.scene.id;

        write_png_gray16(out_dir + "/" + stem + "_vv.png", quantize16(s.scene.vv));
        write_png_gray16(out_dir + "/" + stem + "_vh.png", quantize16(s.scene.vh));
        BoolMask mask8(s.truth.pixels.height(), s.truth.pixels.width());
        for (std::size_t k = 0; k < mask8.size(); ++k)
            mask8[k] = s.truth.pixels[k] ? 255 : 0;
        write_png_gray8(out_dir + "/" + stem + "_mask.png", mask8);

        ManifestEntry e;
        e.scene_id = stem;
        e.vv_path = stem + "_vv.png";
        e.vh_path = stem + "_vh.png";
        e.mask_path = stem + "_mask.png";
        e.split = i < cfg.n_train ? "train" : (i < cfg.n_train + cfg.n_val ? "val" : "test");
        manifest.entries.push_back(std::move(e));
    }
    save_manifest(out_dir + "/manifest.json", manifest);
    // reload so the returned entries carry resolved paths
    return load_manifest(out_dir + "/manifest.json");
}

}  // namespace slick
