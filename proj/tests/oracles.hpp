// Independent reference implementations for the test suites. Everything here
// is deliberately naive (direct summation, double loops, extended-precision
// normal equations) and stays independent of the library's computation paths.
#pragma once

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <vector>

#include "segc/fft.hpp"
#include "segc/raster.hpp"
#include "segc/regress.hpp"
#include "segc/segmetrics.hpp"

namespace oracle {

// O(N^2) direct 2-D DFT.
inline segc::ComplexGrid naive_dft2(const segc::GrayImage& img) {
    segc::ComplexGrid grid;
    grid.width = img.width;
    grid.height = img.height;
    grid.data.assign(img.size(), {0.0, 0.0});
    const double tau = 6.283185307179586476925286766559;
    for (int v = 0; v < img.height; ++v)
        for (int u = 0; u < img.width; ++u) {
            std::complex<double> acc{0.0, 0.0};
            for (int y = 0; y < img.height; ++y)
                for (int x = 0; x < img.width; ++x) {
                    const double ang = -tau * (static_cast<double>(u) * x / img.width +
                                               static_cast<double>(v) * y / img.height);
                    acc += img.at(x, y) * std::complex<double>(std::cos(ang), std::sin(ang));
                }
            grid.at(u, v) = acc;
        }
    return grid;
}

inline segc::ConfusionCounts brute_confusion(const segc::BinaryMask& s,
                                             const segc::BinaryMask& g) {
    segc::ConfusionCounts c;
    for (int y = 0; y < s.height; ++y)
        for (int x = 0; x < s.width; ++x) {
            const int si = s.at(x, y) ? 1 : 0;
            const int gi = g.at(x, y) ? 1 : 0;
            c.tp += static_cast<std::uint64_t>(si * gi);
            c.tn += static_cast<std::uint64_t>((1 - si) * (1 - gi));
            c.fp += static_cast<std::uint64_t>(si * (1 - gi));
            c.fn += static_cast<std::uint64_t>((1 - si) * gi);
        }
    return c;
}

// Two-loop gradient histogram: map of (gx, gy) -> count.
inline std::map<std::pair<int, int>, std::uint64_t> brute_gradient_histogram(
    const segc::GrayImage& img) {
    const int w = img.width, h = img.height;
    std::vector<int> lv(img.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        lv[i] = static_cast<int>(std::lround(img.data[i] * 255.0));
    auto at = [&](int x, int y) {
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return lv[static_cast<std::size_t>(y) * w + x];
    };
    auto half = [](int d) {
        int m = (std::abs(d) + 1) / 2;
        return d < 0 ? -m : m;
    };
    std::map<std::pair<int, int>, std::uint64_t> hist;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int gx = half(at(x + 1, y) - at(x - 1, y));
            const int gy = half(at(x, y + 1) - at(x, y - 1));
            ++hist[{gx, gy}];
        }
    return hist;
}

// Least squares by normal equations in extended precision, same centered and
// scaled basis as the library.
inline std::vector<double> normal_equations_predictions(const std::vector<double>& x,
                                                        const std::vector<double>& y, int degree) {
    const int n = static_cast<int>(x.size());
    const int p = degree + 1;
    long double mean = 0.0L;
    for (double v : x) mean += v;
    mean /= n;
    long double scale = 0.0L;
    for (double v : x) scale = std::max(scale, std::abs(static_cast<long double>(v) - mean));

    std::vector<std::vector<long double>> ata(p, std::vector<long double>(p, 0.0L));
    std::vector<long double> aty(p, 0.0L);
    for (int i = 0; i < n; ++i) {
        const long double z = (static_cast<long double>(x[i]) - mean) / scale;
        std::vector<long double> row(p);
        long double pw = 1.0L;
        for (int j = 0; j < p; ++j) {
            row[j] = pw;
            pw *= z;
        }
        for (int a = 0; a < p; ++a) {
            aty[a] += row[a] * y[i];
            for (int b = 0; b < p; ++b) ata[a][b] += row[a] * row[b];
        }
    }
    // Gaussian elimination with partial pivoting
    for (int col = 0; col < p; ++col) {
        int pivot = col;
        for (int r = col + 1; r < p; ++r)
            if (std::abs(ata[r][col]) > std::abs(ata[pivot][col])) pivot = r;
        std::swap(ata[col], ata[pivot]);
        std::swap(aty[col], aty[pivot]);
        for (int r = 0; r < p; ++r) {
            if (r == col) continue;
            const long double f = ata[r][col] / ata[col][col];
            for (int c = col; c < p; ++c) ata[r][c] -= f * ata[col][c];
            aty[r] -= f * aty[col];
        }
    }
    std::vector<long double> coef(p);
    for (int j = 0; j < p; ++j) coef[j] = aty[j] / ata[j][j];

    std::vector<double> pred(n);
    for (int i = 0; i < n; ++i) {
        const long double z = (static_cast<long double>(x[i]) - mean) / scale;
        long double acc = 0.0L;
        for (int j = p - 1; j >= 0; --j) acc = acc * z + coef[j];
        pred[i] = static_cast<double>(acc);
    }
    return pred;
}

// Exhaustive threshold sweep: binarize at every level and count.
inline std::pair<double, double> exhaustive_best_threshold(const segc::GrayImage& gray,
                                                           const segc::BinaryMask& ref,
                                                           int levels) {
    double best_t = 0.0, best_dice = -1.0;
    for (int j = 1; j <= levels; ++j) {
        const double t = static_cast<double>(j) / levels;
        std::uint64_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < gray.size(); ++i) {
            const bool s = gray.data[i] >= t;
            const bool g = ref.data[i] != 0;
            tp += s && g;
            fp += s && !g;
            fn += !s && g;
        }
        const double den = static_cast<double>(2 * tp + fp + fn);
        const double dice = den > 0 ? 2.0 * static_cast<double>(tp) / den : 0.0;
        if (dice > best_dice) {
            best_dice = dice;
            best_t = t;
        }
    }
    return {best_t, best_dice};
}

// Direct per-output-pixel bilinear sampling.
inline double bilinear_sample(const segc::GrayImage& img, double sx, double sy) {
    sx = std::clamp(sx, 0.0, static_cast<double>(img.width - 1));
    sy = std::clamp(sy, 0.0, static_cast<double>(img.height - 1));
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const int x1 = std::min(x0 + 1, img.width - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fx = sx - x0, fy = sy - y0;
    const double top = img.at(x0, y0) * (1 - fx) + img.at(x1, y0) * fx;
    const double bot = img.at(x0, y1) * (1 - fx) + img.at(x1, y1) * fx;
    return top * (1 - fy) + bot * fy;
}

inline double spearman_rank_correlation(std::vector<double> a, std::vector<double> b) {
    auto ranks = [](std::vector<double> v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
        std::vector<double> r(v.size());
        for (std::size_t pos = 0; pos < idx.size(); ++pos) r[idx[pos]] = static_cast<double>(pos);
        return r;
    };
    const auto ra = ranks(std::move(a));
    const auto rb = ranks(std::move(b));
    const double n = static_cast<double>(ra.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    return cov / std::sqrt(va * vb);
}

// Scratch directory unique to the current process.
inline std::filesystem::path temp_dir(const char* tag) {
    auto dir = std::filesystem::temp_directory_path() /
               (std::string("segc_test_") + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace oracle
