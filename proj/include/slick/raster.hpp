#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace slick {

// Row-major 2-D grid. Doubles for intensity bands, uint8_t for masks.
template <typename T>
class Raster {
public:
    Raster() = default;
    Raster(int height, int width, T fill = T{})
        : height_(height), width_(width), data_(checked_size(height, width), fill) {}

    int height() const { return height_; }
    int width() const { return width_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& at(int r, int c) { return data_[static_cast<std::size_t>(r) * width_ + c]; }
    const T& at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * width_ + c];
    }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    // Reflect-padded access: out-of-range indices mirror about the edge
    // pixel (gfedcb|abcdefgh|gfedcba), i.e. -1 -> 1, n -> n-2.
    const T& at_reflect(int r, int c) const {
        return at(reflect(r, height_), reflect(c, width_));
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool same_shape(int h, int w) const { return height_ == h && width_ == w; }

    friend bool operator==(const Raster& a, const Raster& b) {
        return a.height_ == b.height_ && a.width_ == b.width_ && a.data_ == b.data_;
    }

    static int reflect(int i, int n) {
        if (n == 1) return 0;
        const int period = 2 * n - 2;
        i %= period;
        if (i < 0) i += period;
        return i < n ? i : period - i;
    }

private:
    static std::size_t checked_size(int h, int w) {
        if (h <= 0 || w <= 0) throw std::invalid_argument("raster dimensions must be positive");
        return static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
    }

    int height_ = 0;
    int width_ = 0;
    std::vector<T> data_;
};

using Image = Raster<double>;
using BoolMask = Raster<std::uint8_t>;

}  // namespace slick
