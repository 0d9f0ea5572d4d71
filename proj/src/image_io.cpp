#include "slick/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace slick {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

// ---------------------------------------------------------------- PNG read

struct PngReadState {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t offset;
};

void png_mem_read(png_structp png, png_bytep out, png_size_t n) {
    auto* st = static_cast<PngReadState*>(png_get_io_ptr(png));
    if (st->offset + n > st->size) png_error(png, "truncated PNG");
    std::memcpy(out, st->data + st->offset, n);
    st->offset += n;
}

GrayImage read_png(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) fail(path, "png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(path, "png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "PNG decode error");
    }

    PngReadState st{bytes.data(), bytes.size(), 0};
    png_set_read_fn(png, &st, png_mem_read);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);

    if (color != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "unsupported PNG color type (single-band grayscale required)");
    }
    if (depth != 8 && depth != 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "unsupported PNG bit depth " + std::to_string(depth) +
                       " (8 or 16 required)");
    }

    GrayImage img;
    img.height = static_cast<int>(h);
    img.width = static_cast<int>(w);
    img.bit_depth = depth;
    img.pixels.resize(static_cast<std::size_t>(h) * w);

    const std::size_t stride = static_cast<std::size_t>(w) * (depth / 8);
    std::vector<std::uint8_t> row(stride);
    for (png_uint_32 r = 0; r < h; ++r) {
        png_read_row(png, row.data(), nullptr);
        std::uint16_t* out = img.pixels.data() + static_cast<std::size_t>(r) * w;
        if (depth == 8) {
            for (png_uint_32 c = 0; c < w; ++c) out[c] = row[c];
        } else {
            for (png_uint_32 c = 0; c < w; ++c)  // PNG is big-endian
                out[c] = static_cast<std::uint16_t>((row[2 * c] << 8) | row[2 * c + 1]);
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

// --------------------------------------------------------------- TIFF read

std::uint32_t get_u(const std::uint8_t* p, int n, bool le) {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) {
        const std::uint32_t b = p[le ? i : n - 1 - i];
        v |= b << (8 * i);
    }
    return v;
}

// Minimal baseline-TIFF reader: single band, uncompressed, 8/16-bit,
// both byte orders, any strip layout.
GrayImage read_tiff(const std::string& path, const std::vector<std::uint8_t>& b) {
    if (b.size() < 8) fail(path, "truncated TIFF header");
    const bool le = b[0] == 'I';
    const std::uint32_t ifd_off = get_u(&b[4], 4, le);
    if (ifd_off + 2 > b.size()) fail(path, "bad TIFF IFD offset");

    const std::uint16_t n_tags = static_cast<std::uint16_t>(get_u(&b[ifd_off], 2, le));
    if (ifd_off + 2 + 12u * n_tags > b.size()) fail(path, "truncated TIFF IFD");

    std::uint32_t width = 0, height = 0, bits = 1, compression = 1, spp = 1, sample_format = 1;
    std::vector<std::uint32_t> strip_offsets, strip_counts;

    // Values of SHORT/LONG tags; inline payloads live in the value field
    // itself, larger ones behind the recorded offset, all in file order.
    auto tag_values = [&](const std::uint8_t* field, std::uint16_t type, std::uint32_t count) {
        std::vector<std::uint32_t> vals;
        const int elem = type == 3 ? 2 : 4;  // SHORT=3, LONG=4
        const std::size_t total = static_cast<std::size_t>(elem) * count;
        const std::uint8_t* src = field;
        if (total > 4) {
            const std::uint32_t off = get_u(field, 4, le);
            if (off + total > b.size()) fail(path, "TIFF tag offset out of range");
            src = &b[off];
        }
        for (std::uint32_t i = 0; i < count; ++i)
            vals.push_back(get_u(src + static_cast<std::size_t>(i) * elem, elem, le));
        return vals;
    };

    for (std::uint16_t i = 0; i < n_tags; ++i) {
        const std::uint8_t* p = &b[ifd_off + 2 + 12u * i];
        const std::uint16_t id = static_cast<std::uint16_t>(get_u(p, 2, le));
        const std::uint16_t type = static_cast<std::uint16_t>(get_u(p + 2, 2, le));
        const std::uint32_t count = get_u(p + 4, 4, le);
        if (type != 3 && type != 4) continue;
        const auto vals = tag_values(p + 8, type, count);
        if (vals.empty()) continue;
        switch (id) {
            case 256: width = vals[0]; break;
            case 257: height = vals[0]; break;
            case 258: bits = vals[0]; break;
            case 259: compression = vals[0]; break;
            case 277: spp = vals[0]; break;
            case 273: strip_offsets = vals; break;
            case 279: strip_counts = vals; break;
            case 339: sample_format = vals[0]; break;
            default: break;
        }
    }

    if (compression != 1) fail(path, "unsupported TIFF compression (uncompressed required)");
    if (spp != 1) fail(path, "unsupported TIFF samples-per-pixel (single band required)");
    if (sample_format != 1) fail(path, "unsupported TIFF sample format (unsigned int required)");
    if (bits != 8 && bits != 16)
        fail(path, "unsupported TIFF bit depth " + std::to_string(bits) + " (8 or 16 required)");
    if (width == 0 || height == 0 || strip_offsets.empty())
        fail(path, "incomplete TIFF (missing dimensions or strip offsets)");
    if (strip_counts.size() != strip_offsets.size())
        fail(path, "TIFF strip offset/count mismatch");

    GrayImage img;
    img.height = static_cast<int>(height);
    img.width = static_cast<int>(width);
    img.bit_depth = static_cast<int>(bits);
    img.pixels.resize(static_cast<std::size_t>(height) * width);

    const std::size_t bytes_per_px = bits / 8;
    std::size_t px = 0;
    const std::size_t total_px = img.pixels.size();
    for (std::size_t s = 0; s < strip_offsets.size() && px < total_px; ++s) {
        const std::size_t off = strip_offsets[s];
        const std::size_t cnt = strip_counts[s];
        if (off + cnt > b.size()) fail(path, "TIFF strip out of range");
        for (std::size_t i = 0; i + bytes_per_px <= cnt && px < total_px; i += bytes_per_px)
            img.pixels[px++] =
                static_cast<std::uint16_t>(get_u(&b[off + i], static_cast<int>(bytes_per_px), le));
    }
    if (px != total_px) fail(path, "TIFF pixel data truncated");
    return img;
}

// -------------------------------------------------------------- PNG write

void write_png_gray(const std::string& path, int height, int width, int depth,
                    const std::uint8_t* rows8, const std::uint16_t* rows16) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) fail(path, "cannot open file for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(fp);
        fail(path, "libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        fail(path, "PNG encode error");
    }

    png_init_io(png, fp);
    png_set_compression_level(png, 6);  // fixed settings: deterministic bytes
    png_set_IHDR(png, info, width, height, depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<std::uint8_t> row(static_cast<std::size_t>(width) * (depth / 8));
    for (int r = 0; r < height; ++r) {
        if (depth == 8) {
            std::memcpy(row.data(), rows8 + static_cast<std::size_t>(r) * width, width);
        } else {
            for (int c = 0; c < width; ++c) {
                const std::uint16_t v = rows16[static_cast<std::size_t>(r) * width + c];
                row[2 * c] = static_cast<std::uint8_t>(v >> 8);
                row[2 * c + 1] = static_cast<std::uint8_t>(v & 0xff);
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace

Image GrayImage::to_unit_image() const {
    Image out(height, width);
    const double denom = bit_depth == 8 ? 255.0 : 65535.0;
    for (std::size_t i = 0; i < pixels.size(); ++i) out[i] = pixels[i] / denom;
    return out;
}

GrayImage read_gray(const std::string& path) {
    const auto bytes = read_file(path);
    static const std::uint8_t png_sig[4] = {0x89, 'P', 'N', 'G'};
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), png_sig, 4) == 0)
        return read_png(path, bytes);
    if (bytes.size() >= 4 && ((bytes[0] == 'I' && bytes[1] == 'I' && bytes[2] == 42) ||
                              (bytes[0] == 'M' && bytes[1] == 'M' && bytes[3] == 42)))
        return read_tiff(path, bytes);
    fail(path, "unrecognized raster format (PNG or TIFF required)");
}

void write_png_gray8(const std::string& path, const Raster<std::uint8_t>& img) {
    write_png_gray(path, img.height(), img.width(), 8, img.data().data(), nullptr);
}

void write_png_gray16(const std::string& path, const Raster<std::uint16_t>& img) {
    write_png_gray(path, img.height(), img.width(), 16, nullptr, img.data().data());
}

void write_tiff_gray(const std::string& path, const GrayImage& img) {
    if (img.bit_depth != 8 && img.bit_depth != 16)
        fail(path, "TIFF writer supports 8/16-bit only");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");

    auto put16 = [&](std::uint16_t v) {
        char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
        out.write(b, 2);
    };
    auto put32 = [&](std::uint32_t v) {
        char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>(v >> 24)};
        out.write(b, 4);
    };
    auto tag = [&](std::uint16_t id, std::uint16_t type, std::uint32_t count, std::uint32_t val) {
        put16(id);
        put16(type);
        put32(count);
        if (type == 3 && count == 1) {
            put16(static_cast<std::uint16_t>(val));
            put16(0);
        } else {
            put32(val);
        }
    };

    const std::uint32_t w = static_cast<std::uint32_t>(img.width);
    const std::uint32_t h = static_cast<std::uint32_t>(img.height);
    const std::uint32_t bpp = img.bit_depth / 8;
    const std::uint32_t data_bytes = w * h * bpp;
    const std::uint32_t data_off = 8;
    const std::uint32_t ifd_off = data_off + data_bytes;

    out.write("II", 2);
    put16(42);
    put32(ifd_off);

    for (std::uint32_t i = 0; i < w * h; ++i) {
        const std::uint16_t v = img.pixels[i];
        if (img.bit_depth == 8) {
            const char c = static_cast<char>(v & 0xff);
            out.write(&c, 1);
        } else {
            put16(v);
        }
    }

    const std::uint16_t n_tags = 10;
    put16(n_tags);
    tag(256, 4, 1, w);                                    // ImageWidth
    tag(257, 4, 1, h);                                    // ImageLength
    tag(258, 3, 1, static_cast<std::uint32_t>(img.bit_depth));  // BitsPerSample
    tag(259, 3, 1, 1);                                    // Compression: none
    tag(262, 3, 1, 1);                                    // Photometric: BlackIsZero
    tag(273, 4, 1, data_off);                             // StripOffsets
    tag(277, 3, 1, 1);                                    // SamplesPerPixel
    tag(278, 4, 1, h);                                    // RowsPerStrip
    tag(279, 4, 1, data_bytes);                           // StripByteCounts
    tag(339, 3, 1, 1);                                    // SampleFormat: unsigned
    put32(0);  // no next IFD

    if (!out) fail(path, "TIFF write failed");
}

Raster<std::uint16_t> quantize16(const Image& img) {
    Raster<std::uint16_t> out(img.height(), img.width());
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double v = std::clamp(img[i], 0.0, 1.0);
        out[i] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
    }
    return out;
}

}  // namespace slick
