#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "segc/fft.hpp"
#include "segc/format.hpp"
#include "segc/raster.hpp"

namespace segc {

/// Radially binned spectral power over normalized frequencies (0, 0.5].
/// A degenerate (all-pixels-equal) source image yields all-zero power and
/// leaves the mean/median frequency undefined downstream.
struct PowerSpectrum {
    std::vector<double> bin_center;
    std::vector<double> power;
    bool degenerate = false;

    int bins() const { return static_cast<int>(power.size()); }
    double total() const {
        double s = 0.0;
        for (double p : power) s += p;
        return s;
    }
};

constexpr int kDefaultSpectrumBins = 256;

/// Signed frequency index for coefficient u of an axis of length n.
inline int signed_freq_index(int u, int n) { return u <= n / 2 ? u : u - n; }

/// Mean-subtracted radially averaged power spectrum with M equal-width bins
/// spanning (0, 0.5]. Per-axis frequency normalization (u/W, v/H) keeps
/// rectangular images isotropic in normalized units; the DC term and corner
/// frequencies above 0.5 are discarded.
inline PowerSpectrum radial_power_spectrum(const GrayImage& img, int bins = kDefaultSpectrumBins) {
    if (bins < 1) throw ValueError("radial_power_spectrum: bins must be >= 1");
    if (img.width < 2 || img.height < 2)
        throw ValueError("radial_power_spectrum: image must be at least 2x2");

    PowerSpectrum ps;
    ps.bin_center.resize(bins);
    ps.power.assign(bins, 0.0);
    const double bin_width = 0.5 / bins;
    for (int b = 0; b < bins; ++b) ps.bin_center[b] = (b + 0.5) * bin_width;

    if (img.constant()) {
        ps.degenerate = true;
        return ps;
    }

    double mean = 0.0;
    for (double v : img.data) mean += v;
    mean /= static_cast<double>(img.size());
    GrayImage centered = img;
    for (double& v : centered.data) v -= mean;

    ComplexGrid grid = dft2(centered);
    for (int v = 0; v < img.height; ++v) {
        const double fy = std::abs(signed_freq_index(v, img.height)) / static_cast<double>(img.height);
        for (int u = 0; u < img.width; ++u) {
            if (u == 0 && v == 0) continue;
            const double fx = std::abs(signed_freq_index(u, img.width)) / static_cast<double>(img.width);
            const double f = std::hypot(fx, fy);
            if (f <= 0.0 || f > 0.5) continue;
            int idx = static_cast<int>(std::ceil(f * 2.0 * bins)) - 1;
            if (idx < 0) idx = 0;
            if (idx >= bins) idx = bins - 1;
            ps.power[idx] += std::norm(grid.at(u, v));
        }
    }
    if (ps.total() <= 0.0) ps.degenerate = true;
    return ps;
}

/// Ideal (brick-wall) low-pass: zeroes every coefficient whose per-axis
/// normalized frequency exceeds the cutoff, then inverse-transforms and clamps
/// to [0,1]. cutoff = 0.5 keeps every coefficient.
inline GrayImage lowpass(const GrayImage& img, double cutoff) {
    if (!(cutoff > 0.0) || cutoff > 0.5)
        throw ValueError("lowpass: cutoff must be in (0, 0.5]");
    ComplexGrid grid = dft2(img);
    for (int v = 0; v < img.height; ++v) {
        const double fy = std::abs(signed_freq_index(v, img.height)) / static_cast<double>(img.height);
        for (int u = 0; u < img.width; ++u) {
            const double fx = std::abs(signed_freq_index(u, img.width)) / static_cast<double>(img.width);
            if (fx > cutoff || fy > cutoff) grid.at(u, v) = Complex(0.0, 0.0);
        }
    }
    std::vector<double> real = idft2_real(std::move(grid));
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < real.size(); ++i) out.data[i] = std::clamp(real[i], 0.0, 1.0);
    return out;
}

inline std::string to_csv(const PowerSpectrum& ps) {
    std::string out = "bin_center,power\n";
    for (int b = 0; b < ps.bins(); ++b)
        out += format_double(ps.bin_center[b]) + "," + format_double(ps.power[b]) + "\n";
    return out;
}

}  // namespace segc
