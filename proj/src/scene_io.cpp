#include "slick/scene_io.hpp"

#include <json.hpp>
#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "slick/image_io.hpp"

namespace slick {

namespace fs = std::filesystem;
using nlohmann::json;

void SarScene::validate() const {
    if (vv.empty() || vh.empty()) throw std::invalid_argument("scene has empty bands");
    if (!vh.same_shape(vv.height(), vv.width()))
        throw std::invalid_argument("scene '" + id + "': VV/VH dimension mismatch");
    if (land_mask && !land_mask->same_shape(vv.height(), vv.width()))
        throw std::invalid_argument("scene '" + id + "': land mask dimension mismatch");
    for (const Image* band : {&vv, &vh}) {
        for (std::size_t i = 0; i < band->size(); ++i) {
            const double v = (*band)[i];
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("scene '" + id +
                                            "': intensities must be finite and >= 0");
        }
    }
}

std::vector<ManifestEntry> DatasetManifest::split(const std::string& name) const {
    std::vector<ManifestEntry> out;
    for (const auto& e : entries)
        if (e.split == name) out.push_back(e);
    return out;
}

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open manifest");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": manifest parse error: " + e.what());
    }
    if (!doc.is_array()) throw std::runtime_error(path + ": manifest must be a JSON array");

    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](std::string p) {
        if (p.empty()) return p;
        fs::path fp(p);
        return fp.is_absolute() ? fp.string() : (base / fp).string();
    };

    DatasetManifest m;
    std::vector<std::string> ids;
    for (const auto& item : doc) {
        ManifestEntry e;
        e.scene_id = item.at("scene_id").get<std::string>();
        e.vv_path = resolve(item.at("vv_path").get<std::string>());
        e.vh_path = resolve(item.at("vh_path").get<std::string>());
        if (item.contains("mask_path")) e.mask_path = resolve(item["mask_path"].get<std::string>());
        if (item.contains("land_mask_path"))
            e.land_mask_path = resolve(item["land_mask_path"].get<std::string>());
        e.split = item.value("split", "train");
        if (e.split != "train" && e.split != "val" && e.split != "test")
            throw std::runtime_error(path + ": entry '" + e.scene_id + "': bad split '" +
                                     e.split + "'");
        if (e.split == "train" && e.mask_path.empty())
            throw std::runtime_error(path + ": train entry '" + e.scene_id +
                                     "' lacks mask_path");
        for (const std::string& p : {e.vv_path, e.vh_path, e.mask_path, e.land_mask_path})
            if (!p.empty() && !fs::exists(p))
                throw std::runtime_error(path + ": entry '" + e.scene_id +
                                         "' references missing file " + p);
        ids.push_back(e.scene_id);
        m.entries.push_back(std::move(e));
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw std::runtime_error(path + ": duplicate scene_id in manifest");
    return m;
}

void save_manifest(const std::string& path, const DatasetManifest& manifest) {
    json doc = json::array();
    for (const auto& e : manifest.entries) {
        json item;
        item["scene_id"] = e.scene_id;
        item["vv_path"] = e.vv_path;
        item["vh_path"] = e.vh_path;
        if (!e.mask_path.empty()) item["mask_path"] = e.mask_path;
        if (!e.land_mask_path.empty()) item["land_mask_path"] = e.land_mask_path;
        item["split"] = e.split;
        doc.push_back(item);
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot write manifest");
    out << doc.dump(2) << '\n';
}

// ------------------------------------------------------------- resampling

Image resample_area(const Image& src, int oh, int ow) {
    if (oh <= 0 || ow <= 0) throw std::invalid_argument("resample: bad output size");
    if (src.height() == oh && src.width() == ow) return src;

    const double sy = static_cast<double>(src.height()) / oh;
    const double sx = static_cast<double>(src.width()) / ow;
    Image out(oh, ow);
    for (int r = 0; r < oh; ++r) {
        const double y0 = r * sy, y1 = (r + 1) * sy;
        const int iy0 = static_cast<int>(std::floor(y0));
        const int iy1 = std::min(src.height(), static_cast<int>(std::ceil(y1)));
        for (int c = 0; c < ow; ++c) {
            const double x0 = c * sx, x1 = (c + 1) * sx;
            const int ix0 = static_cast<int>(std::floor(x0));
            const int ix1 = std::min(src.width(), static_cast<int>(std::ceil(x1)));
            double acc = 0.0, area = 0.0;
            for (int iy = iy0; iy < iy1; ++iy) {
                const double wy = std::min<double>(iy + 1, y1) - std::max<double>(iy, y0);
                if (wy <= 0.0) continue;
                for (int ix = ix0; ix < ix1; ++ix) {
                    const double wx = std::min<double>(ix + 1, x1) - std::max<double>(ix, x0);
                    if (wx <= 0.0) continue;
                    acc += wy * wx * src.at(iy, ix);
                    area += wy * wx;
                }
            }
            out.at(r, c) = area > 0.0 ? acc / area : 0.0;
        }
    }
    return out;
}

namespace {

// Area-weighted fraction of true pixels per output cell.
Image mask_coverage(const BoolMask& src, int oh, int ow) {
    Image ind(src.height(), src.width());
    for (std::size_t i = 0; i < src.size(); ++i) ind[i] = src[i] ? 1.0 : 0.0;
    return resample_area(ind, oh, ow);
}

}  // namespace

BoolMask resample_mask_majority(const BoolMask& src, int oh, int ow) {
    if (src.height() == oh && src.width() == ow) return src;
    const Image cov = mask_coverage(src, oh, ow);
    BoolMask out(oh, ow);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = cov[i] >= 0.5 - 1e-12 ? 1 : 0;
    return out;
}

BoolMask resample_mask_nearest(const BoolMask& src, int oh, int ow) {
    if (src.height() == oh && src.width() == ow) return src;
    const double sy = static_cast<double>(src.height()) / oh;
    const double sx = static_cast<double>(src.width()) / ow;
    BoolMask out(oh, ow);
    for (int r = 0; r < oh; ++r) {
        const int iy = std::min(src.height() - 1, static_cast<int>((r + 0.5) * sy));
        for (int c = 0; c < ow; ++c) {
            const int ix = std::min(src.width() - 1, static_cast<int>((c + 0.5) * sx));
            out.at(r, c) = src.at(iy, ix);
        }
    }
    return out;
}

// ---------------------------------------------------------------- loading

SarScene load_scene(const ManifestEntry& entry, WorkingSize ws) {
    const GrayImage raw_vv = read_gray(entry.vv_path);
    const GrayImage raw_vh = read_gray(entry.vh_path);
    if (raw_vv.height != raw_vh.height || raw_vv.width != raw_vh.width)
        throw std::runtime_error("scene '" + entry.scene_id +
                                 "': VV/VH dimension mismatch (" +
                                 std::to_string(raw_vv.width) + "x" +
                                 std::to_string(raw_vv.height) + " vs " +
                                 std::to_string(raw_vh.width) + "x" +
                                 std::to_string(raw_vh.height) + ")");

    SarScene scene;
    scene.id = entry.scene_id;
    scene.vv = resample_area(raw_vv.to_unit_image(), ws.height, ws.width);
    scene.vh = resample_area(raw_vh.to_unit_image(), ws.height, ws.width);

    if (!entry.land_mask_path.empty()) {
        const GrayImage raw_land = read_gray(entry.land_mask_path);
        BoolMask land(raw_land.height, raw_land.width);
        for (std::size_t i = 0; i < land.size(); ++i) land[i] = raw_land.pixels[i] ? 1 : 0;
        scene.land_mask = resample_mask_nearest(land, ws.height, ws.width);
    }
    scene.validate();
    return scene;
}

GroundTruthMask load_mask(const std::string& path, WorkingSize ws) {
    const GrayImage raw = read_gray(path);
    BoolMask mask(raw.height, raw.width);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = raw.pixels[i] ? 1 : 0;
    GroundTruthMask gt;
    gt.pixels = resample_mask_majority(mask, ws.height, ws.width);
    return gt;
}

// ------------------------------------------------------------------ model

void ModelFile::validate() const {
    if (static_cast<int>(learners.size()) != ensemble_config.n_learners)
        throw std::invalid_argument("model: n_learners != learner list length");
    if (feature_scaler.shift.size() != kFeatureDim ||
        feature_scaler.scale.size() != kFeatureDim)
        throw std::invalid_argument("model: scaler must cover the 5 features");
    for (const auto& l : learners) {
        const std::size_t n = l.alphas.size();
        if (l.support_x.size() != n || l.support_y.size() != n)
            throw std::invalid_argument("model: learner field lengths disagree");
        for (const auto& x : l.support_x)
            if (x.size() != kFeatureDim)
                throw std::invalid_argument("model: support feature dimension must be 5");
        if (l.kernel.kind == KernelKind::precomputed)
            throw std::invalid_argument("model: precomputed kernels are not serializable");
    }
}

namespace {

constexpr char kModelMagic[8] = {'S', 'L', 'K', 'Q', 'S', 'V', 'M', '1'};

void put_u32(std::string& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.append(b, 4);
}

void put_f64(std::string& out, double v) {
    char b[8];
    std::memcpy(b, &v, 8);  // IEEE-754 little-endian host
    out.append(b, 8);
}

struct Cursor {
    const std::uint8_t* p;
    std::size_t n;
    std::size_t off = 0;
    const std::string& path;

    void need(std::size_t k) const {
        if (off + k > n) throw std::runtime_error(path + ": truncated model file");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[off + i]) << (8 * i);
        off += 4;
        return v;
    }
    double f64() {
        need(8);
        double v;
        std::memcpy(&v, p + off, 8);
        off += 8;
        return v;
    }
    std::int8_t i8() {
        need(1);
        return static_cast<std::int8_t>(p[off++]);
    }
    std::uint8_t u8() {
        need(1);
        return p[off++];
    }
    std::string bytes(std::size_t k) {
        need(k);
        std::string s(reinterpret_cast<const char*>(p + off), k);
        off += k;
        return s;
    }
};

json header_json(const ModelFile& m) {
    json h;
    h["backend"] = to_string(m.backend);
    h["ensemble_config"] = {{"n_learners", m.ensemble_config.n_learners},
                            {"subset_size", m.ensemble_config.subset_size},
                            {"aggregation_rule", to_string(m.ensemble_config.aggregation)}};
    h["feature_scaler"] = {{"shift", m.feature_scaler.shift},
                           {"scale", m.feature_scaler.scale}};
    h["rng_seed"] = m.rng_seed;
    h["working_size"] = {m.working_size.height, m.working_size.width};
    h["preprocess"] = {{"median_window", m.preprocess.median_window},
                       {"clip_low_pct", m.preprocess.clip_low_pct},
                       {"clip_high_pct", m.preprocess.clip_high_pct},
                       {"gamma", m.preprocess.gamma},
                       {"apply_land_mask", m.preprocess.apply_land_mask}};
    h["svm"] = {{"box_c", m.svm_config.box_C},
                {"smo_tol", m.svm_config.smo_tol},
                {"smo_max_passes", m.svm_config.smo_max_passes}};
    h["kernel"] = {{"kind", m.kernel.kind == KernelKind::gate ? "gate" : "rbf"},
                   {"rbf_gamma", m.kernel.rbf_gamma},
                   {"angle_scale", m.kernel.angle_scale}};
    h["encoding"] = {{"bits_per_alpha", m.encoding.bits_per_alpha},
                     {"base", m.encoding.base},
                     {"penalty", m.encoding.penalty}};
    h["anneal"] = {{"num_reads", m.anneal.num_reads},
                   {"top_samples", m.anneal.top_samples},
                   {"sweeps_per_read", m.anneal.sweeps_per_read},
                   {"beta_min", m.anneal.beta_min},
                   {"beta_max", m.anneal.beta_max},
                   {"seed", m.anneal.seed}};
    return h;
}

void header_parse(const json& h, ModelFile& m) {
    m.backend = backend_from_string(h.at("backend").get<std::string>());
    const auto& ec = h.at("ensemble_config");
    m.ensemble_config.n_learners = ec.at("n_learners").get<int>();
    m.ensemble_config.subset_size = ec.at("subset_size").get<int>();
    m.ensemble_config.aggregation =
        aggregation_from_string(ec.at("aggregation_rule").get<std::string>());
    m.ensemble_config.backend = m.backend;
    m.ensemble_config.seed = h.at("rng_seed").get<std::uint64_t>();
    m.feature_scaler.shift = h.at("feature_scaler").at("shift").get<std::vector<double>>();
    m.feature_scaler.scale = h.at("feature_scaler").at("scale").get<std::vector<double>>();
    m.rng_seed = h.at("rng_seed").get<std::uint64_t>();
    m.working_size.height = h.at("working_size").at(0).get<int>();
    m.working_size.width = h.at("working_size").at(1).get<int>();
    const auto& pp = h.at("preprocess");
    m.preprocess.median_window = pp.at("median_window").get<int>();
    m.preprocess.clip_low_pct = pp.at("clip_low_pct").get<double>();
    m.preprocess.clip_high_pct = pp.at("clip_high_pct").get<double>();
    m.preprocess.gamma = pp.at("gamma").get<double>();
    m.preprocess.apply_land_mask = pp.at("apply_land_mask").get<bool>();
    const auto& sv = h.at("svm");
    m.svm_config.box_C = sv.at("box_c").get<double>();
    m.svm_config.smo_tol = sv.at("smo_tol").get<double>();
    m.svm_config.smo_max_passes = sv.at("smo_max_passes").get<int>();
    const auto& k = h.at("kernel");
    m.kernel.kind = k.at("kind").get<std::string>() == "gate" ? KernelKind::gate
                                                              : KernelKind::rbf;
    m.kernel.rbf_gamma = k.at("rbf_gamma").get<double>();
    m.kernel.angle_scale = k.at("angle_scale").get<double>();
    const auto& enc = h.at("encoding");
    m.encoding.bits_per_alpha = enc.at("bits_per_alpha").get<int>();
    m.encoding.base = enc.at("base").get<int>();
    m.encoding.penalty = enc.at("penalty").get<double>();
    const auto& an = h.at("anneal");
    m.anneal.num_reads = an.at("num_reads").get<int>();
    m.anneal.top_samples = an.at("top_samples").get<int>();
    m.anneal.sweeps_per_read = an.at("sweeps_per_read").get<int>();
    m.anneal.beta_min = an.at("beta_min").get<double>();
    m.anneal.beta_max = an.at("beta_max").get<double>();
    m.anneal.seed = an.at("seed").get<std::uint64_t>();
}

std::uint8_t kernel_kind_code(KernelKind k) {
    return k == KernelKind::gate ? 1 : 0;
}

}  // namespace

void save_model(const ModelFile& model, const std::string& path) {
    model.validate();

    std::string buf;
    buf.append(kModelMagic, 8);
    put_u32(buf, model.format_version);

    const std::string header = header_json(model).dump();  // canonical: sorted keys
    put_u32(buf, static_cast<std::uint32_t>(header.size()));
    buf += header;

    for (const auto& l : model.learners) {
        const auto n = static_cast<std::uint32_t>(l.alphas.size());
        put_u32(buf, n);
        for (double a : l.alphas) put_f64(buf, a);
        put_f64(buf, l.bias);
        for (int y : l.support_y) buf.push_back(static_cast<char>(static_cast<std::int8_t>(y)));
        for (const auto& x : l.support_x)
            for (double v : x) put_f64(buf, v);
        buf.push_back(static_cast<char>(kernel_kind_code(l.kernel.kind)));
        put_f64(buf, l.kernel.kind == KernelKind::gate ? l.kernel.angle_scale
                                                       : l.kernel.rbf_gamma);
    }

    const auto crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(buf.size())));
    put_u32(buf, crc);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error(path + ": write failed");
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open model file");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 8 + 4 + 4 + 4) throw std::runtime_error(path + ": truncated model file");
    if (std::memcmp(buf.data(), kModelMagic, 8) != 0)
        throw std::runtime_error(path + ": bad magic (not a model file)");

    const auto stored_crc_off = buf.size() - 4;
    std::uint32_t stored_crc = 0;
    for (int i = 0; i < 4; ++i)
        stored_crc |= static_cast<std::uint32_t>(
                          static_cast<std::uint8_t>(buf[stored_crc_off + i]))
                      << (8 * i);
    const auto computed = static_cast<std::uint32_t>(crc32(
        0, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(stored_crc_off)));
    if (computed != stored_crc)
        throw std::runtime_error(path + ": checksum failure (corrupt model file)");

    Cursor cur{reinterpret_cast<const std::uint8_t*>(buf.data()), stored_crc_off, 8, path};
    ModelFile m;
    m.format_version = cur.u32();
    if (m.format_version != kModelFormatVersion)
        throw std::runtime_error(path + ": version mismatch (file has format_version " +
                                 std::to_string(m.format_version) + ", expected " +
                                 std::to_string(kModelFormatVersion) + ")");

    const std::uint32_t header_len = cur.u32();
    json h;
    try {
        h = json::parse(cur.bytes(header_len));
        header_parse(h, m);
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": bad model header: " + e.what());
    }

    m.learners.resize(static_cast<std::size_t>(std::max(0, m.ensemble_config.n_learners)));
    for (auto& l : m.learners) {
        const std::uint32_t n = cur.u32();
        l.alphas.resize(n);
        for (auto& a : l.alphas) a = cur.f64();
        l.bias = cur.f64();
        l.support_y.resize(n);
        for (auto& y : l.support_y) y = cur.i8();
        l.support_x.assign(n, Features(kFeatureDim));
        for (auto& x : l.support_x)
            for (auto& v : x) v = cur.f64();
        const std::uint8_t kind = cur.u8();
        const double param = cur.f64();
        if (kind == 1) {
            l.kernel.kind = KernelKind::gate;
            l.kernel.angle_scale = param;
        } else {
            l.kernel.kind = KernelKind::rbf;
            l.kernel.rbf_gamma = param;
        }
    }
    if (cur.off != stored_crc_off)
        throw std::runtime_error(path + ": trailing bytes in model file");
    m.validate();
    return m;
}

}  // namespace slick
