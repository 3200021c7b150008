#pragma once

#include <cmath>
#include <cstdint>

#include "segc/raster.hpp"

namespace segc {

// splitmix64; used instead of <random> so equal seeds give equal rasters on
// every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1).
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Uniform double in [lo, hi).
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

inline BinaryMask synth_disk(int width, int height, double radius, double cx = -1.0,
                             double cy = -1.0) {
    BinaryMask mask(width, height);
    if (radius < 0) throw ValueError("synth_disk: negative radius");
    if (cx < 0) cx = (width - 1) / 2.0;
    if (cy < 0) cy = (height - 1) / 2.0;
    if (radius > 0 && (cx - radius < -0.5 || cx + radius > width - 0.5 || cy - radius < -0.5 ||
                       cy + radius > height - 0.5))
        throw ValueError("synth_disk: disk exceeds frame");
    if (radius == 0) return mask;
    const double r2 = radius * radius;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy <= r2) mask.set(x, y, true);
        }
    return mask;
}

inline BinaryMask synth_rectangle(int width, int height, int x0, int y0, int rect_w, int rect_h) {
    BinaryMask mask(width, height);
    if (rect_w < 0 || rect_h < 0) throw ValueError("synth_rectangle: negative size");
    if (x0 < 0 || y0 < 0 || x0 + rect_w > width || y0 + rect_h > height)
        throw ValueError("synth_rectangle: rectangle exceeds frame");
    for (int y = y0; y < y0 + rect_h; ++y)
        for (int x = x0; x < x0 + rect_w; ++x) mask.set(x, y, true);
    return mask;
}

/// Random-walk polylines of width 1-3 px; `count` controls density. A
/// nonzero stroke_width pins every polyline to that width; 0 draws widths
/// from the seed per polyline.
inline BinaryMask synth_vessels(int width, int height, int count, std::uint64_t seed,
                                int steps = 0, int stroke_width = 0) {
    if (count < 1) throw ValueError("synth_vessels: count must be >= 1");
    if (stroke_width < 0 || stroke_width > 3)
        throw ValueError("synth_vessels: stroke width must be 0 (mixed) or 1..3");
    if (steps <= 0) steps = 2 * std::max(width, height);
    BinaryMask mask(width, height);
    Rng rng(seed);
    for (int v = 0; v < count; ++v) {
        int stroke = stroke_width ? stroke_width : 1 + static_cast<int>(rng.next_below(3));
        double x = rng.next_range(0.0, width);
        double y = rng.next_range(0.0, height);
        double ang = rng.next_range(0.0, 6.283185307179586);
        for (int s = 0; s < steps; ++s) {
            int xi = static_cast<int>(std::lround(x));
            int yi = static_cast<int>(std::lround(y));
            for (int dy = 0; dy < stroke; ++dy)
                for (int dx = 0; dx < stroke; ++dx) {
                    int px = xi + dx - stroke / 2;
                    int py = yi + dy - stroke / 2;
                    if (px >= 0 && px < width && py >= 0 && py < height) mask.set(px, py, true);
                }
            ang += rng.next_range(-0.35, 0.35);
            x += std::cos(ang);
            y += std::sin(ang);
        }
    }
    return mask;
}

inline GrayImage synth_noise(int width, int height, std::uint64_t seed) {
    GrayImage img(width, height);
    Rng rng(seed);
    for (double& v : img.data) v = rng.next_double();
    return img;
}

}  // namespace segc
