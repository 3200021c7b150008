#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "segc/errors.hpp"

namespace segc {

/// Row-major gray-scale raster with intensities in [0,1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0) : width(w), height(h) {
        if (w < 1 || h < 1) throw ValueError("image dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill);
    }

    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return data.size(); }

    bool constant() const {
        for (double v : data)
            if (v != data[0]) return false;
        return true;
    }
};

/// Row-major binary raster; true marks foreground.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false) : width(w), height(h) {
        if (w < 1 || h < 1) throw ValueError("mask dimensions must be >= 1");
        data.assign(static_cast<std::size_t>(w) * h, fill ? 1 : 0);
    }

    bool at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    std::size_t size() const { return data.size(); }

    std::size_t foreground_count() const {
        std::size_t n = 0;
        for (auto v : data) n += v != 0;
        return n;
    }
    bool empty_foreground() const { return foreground_count() == 0; }

    GrayImage to_gray_image() const {
        GrayImage g(width, height);
        for (std::size_t i = 0; i < data.size(); ++i) g.data[i] = data[i] ? 1.0 : 0.0;
        return g;
    }
};

/// Three same-sized planes of an RGB raster, values in [0,1].
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<double> r, g, b;
};

/// BT.601 luma conversion, clamped to [0,1].
inline GrayImage to_gray(const RgbImage& rgb) {
    if (rgb.r.size() != rgb.g.size() || rgb.g.size() != rgb.b.size() ||
        rgb.r.size() != static_cast<std::size_t>(rgb.width) * rgb.height)
        throw ValueError("to_gray: channel dimensions mismatch");
    GrayImage out(rgb.width, rgb.height);
    for (std::size_t i = 0; i < rgb.r.size(); ++i) {
        double y = 0.299 * rgb.r[i] + 0.587 * rgb.g[i] + 0.114 * rgb.b[i];
        out.data[i] = std::clamp(y, 0.0, 1.0);
    }
    return out;
}

inline void require_same_dims(int w1, int h1, int w2, int h2, const char* what) {
    if (w1 != w2 || h1 != h2)
        throw ValueError(std::string(what) + ": dimension mismatch (" + std::to_string(w1) + "x" +
                         std::to_string(h1) + " vs " + std::to_string(w2) + "x" +
                         std::to_string(h2) + ")");
}

}  // namespace segc
