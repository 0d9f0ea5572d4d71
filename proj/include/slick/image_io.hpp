#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slick/raster.hpp"

namespace slick {

// Decoded single-band raster, values kept at native integer scale.
struct GrayImage {
    int height = 0;
    int width = 0;
    int bit_depth = 0;  // 8 or 16
    std::vector<std::uint16_t> pixels;  // row-major

    // Normalize to [0,1] by the max representable value of the bit depth.
    Image to_unit_image() const;
};

// Reads an 8/16-bit single-band PNG or uncompressed single-band TIFF.
// Format is sniffed from the file signature, not the extension.
GrayImage read_gray(const std::string& path);

// Grayscale PNG writers. Output bytes are deterministic: fixed zlib
// settings and no ancillary chunks.
void write_png_gray8(const std::string& path, const Raster<std::uint8_t>& img);
void write_png_gray16(const std::string& path, const Raster<std::uint16_t>& img);

// Uncompressed little-endian single-strip TIFF writers (test fixtures and
// interchange; PNG is the default output format).
void write_tiff_gray(const std::string& path, const GrayImage& img);

// Quantize a [0,1] image to 16-bit (values clamped to [0,1] first).
Raster<std::uint16_t> quantize16(const Image& img);

}  // namespace slick
