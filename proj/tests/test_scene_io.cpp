#include <doctest.h>
#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "slick/image_io.hpp"
#include "slick/scene_io.hpp"
#include "support.hpp"

using namespace slick;

namespace {

void write_const_png16(const std::string& path, int h, int w, std::uint16_t v) {
    Raster<std::uint16_t> img(h, w, v);
    write_png_gray16(path, img);
}

ModelFile minimal_model(int n_learners, std::uint64_t seed) {
    Rng rng(seed);
    ModelFile m;
    m.feature_scaler.shift.assign(kFeatureDim, 0.0);
    m.feature_scaler.scale.assign(kFeatureDim, 1.0);
    m.ensemble_config.n_learners = n_learners;
    m.rng_seed = seed;
    for (int i = 0; i < n_learners; ++i) {
        WeakLearner l;
        l.kernel.rbf_gamma = 1.0 + rng.uniform();
        const int n = 1 + static_cast<int>(rng.uniform_below(6));
        for (int s = 0; s < n; ++s) {
            l.support_x.push_back(test::random_unit_features(rng));
            l.support_y.push_back(rng.uniform() < 0.5 ? -1 : 1);
            l.alphas.push_back(3.0 * rng.uniform());
        }
        l.bias = rng.uniform() - 0.5;
        m.learners.push_back(std::move(l));
    }
    return m;
}

}  // namespace

TEST_CASE("PNG round trip preserves 8- and 16-bit pixels") {
    test::TempDir dir("png");
    Rng rng(1);

    Raster<std::uint8_t> img8(13, 9);
    for (std::size_t i = 0; i < img8.size(); ++i)
        img8[i] = static_cast<std::uint8_t>(rng.uniform_below(256));
    write_png_gray8(dir.str("a8.png"), img8);
    const GrayImage back8 = read_gray(dir.str("a8.png"));
    CHECK(back8.bit_depth == 8);
    REQUIRE(back8.height == 13);
    REQUIRE(back8.width == 9);
    for (std::size_t i = 0; i < img8.size(); ++i) CHECK(back8.pixels[i] == img8[i]);

    Raster<std::uint16_t> img16(7, 21);
    for (std::size_t i = 0; i < img16.size(); ++i)
        img16[i] = static_cast<std::uint16_t>(rng.uniform_below(65536));
    write_png_gray16(dir.str("a16.png"), img16);
    const GrayImage back16 = read_gray(dir.str("a16.png"));
    CHECK(back16.bit_depth == 16);
    for (std::size_t i = 0; i < img16.size(); ++i) CHECK(back16.pixels[i] == img16[i]);
}

TEST_CASE("TIFF round trip and error paths") {
    test::TempDir dir("tiff");
    GrayImage img;
    img.height = 5;
    img.width = 6;
    img.bit_depth = 16;
    Rng rng(2);
    for (int i = 0; i < 30; ++i)
        img.pixels.push_back(static_cast<std::uint16_t>(rng.uniform_below(65536)));
    write_tiff_gray(dir.str("a.tiff"), img);
    const GrayImage back = read_gray(dir.str("a.tiff"));
    CHECK(back.bit_depth == 16);
    CHECK(back.pixels == img.pixels);

    GrayImage img8 = img;
    img8.bit_depth = 8;
    for (auto& p : img8.pixels) p &= 0xff;
    write_tiff_gray(dir.str("b.tiff"), img8);
    CHECK(read_gray(dir.str("b.tiff")).pixels == img8.pixels);

    SUBCASE("unsupported TIFF bit depth is rejected") {
        // patch BitsPerSample (tag 258) to 32 in the written file
        std::string bytes = test::slurp(dir.str("b.tiff"));
        const std::size_t ifd = 8 + img8.pixels.size();
        bool patched = false;
        for (std::size_t off = ifd + 2; off + 12 <= bytes.size(); off += 12) {
            const unsigned tag = static_cast<std::uint8_t>(bytes[off]) |
                                 (static_cast<std::uint8_t>(bytes[off + 1]) << 8);
            if (tag == 258) {
                bytes[off + 8] = 32;
                patched = true;
                break;
            }
        }
        REQUIRE(patched);
        std::ofstream out(dir.str("bad.tiff"), std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.close();
        CHECK_THROWS_WITH_AS(static_cast<void>(read_gray(dir.str("bad.tiff"))),
                             doctest::Contains("bit depth"), std::runtime_error);
    }

    SUBCASE("garbage files are rejected") {
        std::ofstream out(dir.str("junk.bin"), std::ios::binary);
        out << "not an image at all";
        out.close();
        CHECK_THROWS_AS(static_cast<void>(read_gray(dir.str("junk.bin"))),
                        std::runtime_error);
        CHECK_THROWS_AS(static_cast<void>(read_gray(dir.str("missing.png"))),
                        std::runtime_error);
    }
}

TEST_CASE("resample_area fixtures") {
    SUBCASE("4x4 constant downscales to constant") {
        Image img(4, 4, 7.0);
        const Image out = resample_area(img, 2, 2);
        for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(7.0));
    }
    SUBCASE("identity size is a pass-through") {
        const Image img = test::random_unit_image(6, 6, 3);
        CHECK(resample_area(img, 6, 6) == img);
    }
    SUBCASE("2x2 block mean") {
        Image img(2, 2);
        img[0] = 1.0;
        img[1] = 2.0;
        img[2] = 3.0;
        img[3] = 4.0;
        const Image out = resample_area(img, 1, 1);
        CHECK(out[0] == doctest::Approx(2.5).epsilon(1e-12));
    }
    SUBCASE("non-integer ratio preserves the global mean") {
        const Image img = test::random_unit_image(9, 9, 4);
        const Image out = resample_area(img, 4, 4);
        double src_mean = 0.0, dst_mean = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i) src_mean += img[i];
        for (std::size_t i = 0; i < out.size(); ++i) dst_mean += out[i];
        CHECK(dst_mean / out.size() == doctest::Approx(src_mean / img.size()).epsilon(1e-9));
    }
}

TEST_CASE("load_scene resamples to the working size") {
    test::TempDir dir("scene");
    write_const_png16(dir.str("vv.png"), 512, 512, 32768);
    write_const_png16(dir.str("vh.png"), 512, 512, 16384);

    ManifestEntry e;
    e.scene_id = "s1";
    e.vv_path = dir.str("vv.png");
    e.vh_path = dir.str("vh.png");

    const SarScene scene = load_scene(e, {256, 256});
    CHECK(scene.height() == 256);
    CHECK(scene.width() == 256);
    CHECK(scene.vv[0] == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));
    CHECK(scene.vh[0] == doctest::Approx(16384.0 / 65535.0).epsilon(1e-12));

    // determinism: loading twice yields identical rasters
    const SarScene again = load_scene(e, {256, 256});
    CHECK(scene.vv == again.vv);
    CHECK(scene.vh == again.vh);

    SUBCASE("pass-through at native size") {
        const SarScene native = load_scene(e, {512, 512});
        CHECK(native.height() == 512);
        CHECK(native.vv[12345] == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));
    }
    SUBCASE("VV/VH dimension mismatch is rejected") {
        write_const_png16(dir.str("vh_small.png"), 256, 512, 100);
        ManifestEntry bad = e;
        bad.vh_path = dir.str("vh_small.png");
        CHECK_THROWS_WITH_AS(static_cast<void>(load_scene(bad, {256, 256})),
                             doctest::Contains("dimension mismatch"), std::runtime_error);
    }
}

TEST_CASE("scene validation rejects NaN and negative intensities") {
    SarScene s;
    s.id = "bad";
    s.vv = Image(2, 2, 0.5);
    s.vh = Image(2, 2, 0.5);
    s.validate();  // fine
    s.vv[1] = std::nan("");
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.vv[1] = -0.25;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("load_mask applies the 50% area rule") {
    test::TempDir dir("mask");
    SUBCASE("all-255 and all-0 masks") {
        BoolMask on(8, 8, 255);
        write_png_gray8(dir.str("on.png"), on);
        const GroundTruthMask a = load_mask(dir.str("on.png"), {4, 4});
        for (std::size_t i = 0; i < a.pixels.size(); ++i) CHECK(a.pixels[i] == 1);

        BoolMask off(8, 8, 0);
        write_png_gray8(dir.str("off.png"), off);
        const GroundTruthMask b = load_mask(dir.str("off.png"), {4, 4});
        for (std::size_t i = 0; i < b.pixels.size(); ++i) CHECK(b.pixels[i] == 0);
    }
    SUBCASE("a 50% tie counts as oil") {
        BoolMask half(2, 2, 0);
        half[0] = 255;
        half[1] = 255;
        write_png_gray8(dir.str("half.png"), half);
        const GroundTruthMask m = load_mask(dir.str("half.png"), {1, 1});
        CHECK(m.pixels[0] == 1);
    }
    SUBCASE("under 50% is water") {
        BoolMask quarter(2, 2, 0);
        quarter[0] = 255;
        write_png_gray8(dir.str("q.png"), quarter);
        const GroundTruthMask m = load_mask(dir.str("q.png"), {1, 1});
        CHECK(m.pixels[0] == 0);
    }
}

TEST_CASE("manifest round trip, resolution and validation") {
    test::TempDir dir("manifest");
    write_const_png16(dir.str("vv.png"), 8, 8, 1000);
    write_const_png16(dir.str("vh.png"), 8, 8, 500);
    BoolMask m8(8, 8, 255);
    write_png_gray8(dir.str("m.png"), m8);

    DatasetManifest m;
    m.entries.push_back({"a", "vv.png", "vh.png", "m.png", "", "train"});
    m.entries.push_back({"b", "vv.png", "vh.png", "", "", "test"});
    save_manifest(dir.str("manifest.json"), m);

    const DatasetManifest back = load_manifest(dir.str("manifest.json"));
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries[0].vv_path == dir.str("vv.png"));  // resolved against manifest dir
    CHECK(back.split("train").size() == 1);
    CHECK(back.split("test").size() == 1);
    CHECK(back.split("val").empty());

    SUBCASE("duplicate ids rejected") {
        DatasetManifest dup = m;
        dup.entries.push_back({"a", "vv.png", "vh.png", "m.png", "", "train"});
        save_manifest(dir.str("dup.json"), dup);
        CHECK_THROWS_WITH_AS(static_cast<void>(load_manifest(dir.str("dup.json"))),
                             doctest::Contains("duplicate"), std::runtime_error);
    }
    SUBCASE("train entries need masks") {
        DatasetManifest nomask;
        nomask.entries.push_back({"c", "vv.png", "vh.png", "", "", "train"});
        save_manifest(dir.str("nomask.json"), nomask);
        CHECK_THROWS_WITH_AS(static_cast<void>(load_manifest(dir.str("nomask.json"))),
                             doctest::Contains("mask"), std::runtime_error);
    }
    SUBCASE("missing files rejected") {
        DatasetManifest gone;
        gone.entries.push_back({"d", "vv_missing.png", "vh.png", "", "", "test"});
        save_manifest(dir.str("gone.json"), gone);
        CHECK_THROWS_WITH_AS(static_cast<void>(load_manifest(dir.str("gone.json"))),
                             doctest::Contains("missing"), std::runtime_error);
    }
}

TEST_CASE("model files round trip bit-exactly") {
    test::TempDir dir("model");
    SUBCASE("empty ensemble") {
        const ModelFile m = minimal_model(0, 1);
        save_model(m, dir.str("empty.slkq"));
        const ModelFile back = load_model(dir.str("empty.slkq"));
        CHECK(back.learners.empty());
        CHECK(back.format_version == kModelFormatVersion);
    }
    SUBCASE("many learners, exact alphas") {
        const ModelFile m = minimal_model(500, 2);
        save_model(m, dir.str("big.slkq"));
        const ModelFile back = load_model(dir.str("big.slkq"));
        REQUIRE(back.learners.size() == 500);
        for (std::size_t i = 0; i < 500; ++i) {
            CHECK(back.learners[i].alphas == m.learners[i].alphas);  // bit-exact
            CHECK(back.learners[i].bias == m.learners[i].bias);
            CHECK(back.learners[i].support_y == m.learners[i].support_y);
            CHECK(back.learners[i].support_x == m.learners[i].support_x);
            CHECK(back.learners[i].kernel.rbf_gamma == m.learners[i].kernel.rbf_gamma);
        }
        CHECK(back.feature_scaler.shift == m.feature_scaler.shift);

        // identical bytes on re-save
        save_model(back, dir.str("big2.slkq"));
        CHECK(test::slurp(dir.str("big.slkq")) == test::slurp(dir.str("big2.slkq")));
    }
}

TEST_CASE("model file corruption and version errors") {
    test::TempDir dir("modelerr");
    const ModelFile m = minimal_model(3, 3);
    save_model(m, dir.str("m.slkq"));
    std::string bytes = test::slurp(dir.str("m.slkq"));

    SUBCASE("version mismatch") {
        // set format_version to 999 and fix up the checksum
        std::string patched = bytes;
        patched[8] = static_cast<char>(999 & 0xff);
        patched[9] = static_cast<char>(999 >> 8);
        // recompute the CRC over everything but the trailer so only the
        // version check can fire
        const auto crc = static_cast<std::uint32_t>(
            crc32(0, reinterpret_cast<const Bytef*>(patched.data()),
                  static_cast<uInt>(patched.size() - 4)));
        for (int i = 0; i < 4; ++i)
            patched[patched.size() - 4 + i] = static_cast<char>((crc >> (8 * i)) & 0xff);
        std::ofstream out(dir.str("v999.slkq"), std::ios::binary);
        out.write(patched.data(), static_cast<std::streamsize>(patched.size()));
        out.close();
        CHECK_THROWS_WITH_AS(static_cast<void>(load_model(dir.str("v999.slkq"))),
                             doctest::Contains("version mismatch"), std::runtime_error);
    }
    SUBCASE("flipped byte fails the checksum") {
        std::string patched = bytes;
        patched[20] = static_cast<char>(patched[20] ^ 0x40);
        std::ofstream out(dir.str("flip.slkq"), std::ios::binary);
        out.write(patched.data(), static_cast<std::streamsize>(patched.size()));
        out.close();
        CHECK_THROWS_WITH_AS(static_cast<void>(load_model(dir.str("flip.slkq"))),
                             doctest::Contains("checksum"), std::runtime_error);
    }
    SUBCASE("truncation is detected") {
        std::string patched = bytes.substr(0, bytes.size() / 2);
        std::ofstream out(dir.str("trunc.slkq"), std::ios::binary);
        out.write(patched.data(), static_cast<std::streamsize>(patched.size()));
        out.close();
        CHECK_THROWS_AS(static_cast<void>(load_model(dir.str("trunc.slkq"))),
                        std::runtime_error);
    }
    SUBCASE("wrong magic is rejected") {
        std::string patched = bytes;
        patched[0] = 'X';
        std::ofstream out(dir.str("magic.slkq"), std::ios::binary);
        out.write(patched.data(), static_cast<std::streamsize>(patched.size()));
        out.close();
        CHECK_THROWS_WITH_AS(static_cast<void>(load_model(dir.str("magic.slkq"))),
                             doctest::Contains("magic"), std::runtime_error);
    }
}
