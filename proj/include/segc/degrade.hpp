#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "segc/manifest.hpp"
#include "segc/netpbm.hpp"
#include "segc/parallel.hpp"
#include "segc/raster.hpp"
#include "segc/segmetrics.hpp"
#include "segc/spectra.hpp"

namespace segc {

struct DegradeConfig {
    int factor = 2;
    int threshold_levels = 256;
};

/// Bilinear resize with pixel-center alignment (source = (i+0.5)*scale - 0.5)
/// and edge clamping. An identity-size call reproduces the input bit for bit.
inline GrayImage resize_bilinear(const GrayImage& img, int out_width, int out_height) {
    if (out_width < 1 || out_height < 1) throw ValueError("resize_bilinear: output dims must be >= 1");
    GrayImage out(out_width, out_height);
    const double sx = static_cast<double>(img.width) / out_width;
    const double sy = static_cast<double>(img.height) / out_height;
    std::vector<int> x0(out_width), x1(out_width);
    std::vector<double> fx(out_width);
    for (int i = 0; i < out_width; ++i) {
        double src = std::clamp((i + 0.5) * sx - 0.5, 0.0, static_cast<double>(img.width - 1));
        x0[i] = static_cast<int>(std::floor(src));
        x1[i] = std::min(x0[i] + 1, img.width - 1);
        fx[i] = src - x0[i];
    }
    for (int j = 0; j < out_height; ++j) {
        double src = std::clamp((j + 0.5) * sy - 0.5, 0.0, static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(std::floor(src));
        const int y1 = std::min(y0 + 1, img.height - 1);
        const double fy = src - y0;
        for (int i = 0; i < out_width; ++i) {
            const double top = img.at(x0[i], y0) * (1.0 - fx[i]) + img.at(x1[i], y0) * fx[i];
            const double bot = img.at(x0[i], y1) * (1.0 - fx[i]) + img.at(x1[i], y1) * fx[i];
            out.at(i, j) = top * (1.0 - fy) + bot * fy;
        }
    }
    return out;
}

struct ThresholdResult {
    double threshold = 0.0;
    double dice = 0.0;
    BinaryMask mask;
};

/// Sweeps `levels` uniform thresholds over (0,1] and returns the one whose
/// binarization (gray >= t) maximizes Dice against the reference; ties go to
/// the smallest threshold. The per-pixel bucket below replicates the exact
/// (gray >= j/levels) comparisons of a naive sweep.
inline ThresholdResult optimal_threshold(const GrayImage& gray, const BinaryMask& reference,
                                         int levels = 256) {
    require_same_dims(gray.width, gray.height, reference.width, reference.height,
                      "optimal_threshold");
    if (levels < 2) throw ValueError("optimal_threshold: levels must be >= 2");
    if (reference.empty_foreground())
        throw ValueError("optimal_threshold: reference mask has no foreground");

    // bucket[i] = largest j in [0, levels] with gray_i >= j/levels
    std::vector<std::uint32_t> ref_count(levels + 2, 0), bg_count(levels + 2, 0);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        const double v = gray.data[i];
        int b = static_cast<int>(std::floor(v * levels));
        b = std::clamp(b, 0, levels);
        while (b + 1 <= levels && v >= static_cast<double>(b + 1) / levels) ++b;
        while (b >= 1 && v < static_cast<double>(b) / levels) --b;
        if (reference.data[i])
            ++ref_count[b];
        else
            ++bg_count[b];
    }

    const std::uint64_t total_fg = reference.foreground_count();
    // suffix sums: tp(j) = sum_{b >= j} ref_count[b], fp(j) likewise over bg
    std::uint64_t tp = 0, fp = 0;
    std::vector<std::uint64_t> tps(levels + 1), fps(levels + 1);
    for (int b = levels; b >= 1; --b) {
        tp += ref_count[b];
        fp += bg_count[b];
        tps[b] = tp;
        fps[b] = fp;
    }

    int best_j = 1;
    double best_dice = -1.0;
    for (int j = 1; j <= levels; ++j) {
        const double fn = static_cast<double>(total_fg - tps[j]);
        const double den = 2.0 * tps[j] + fps[j] + fn;
        const double dice = den > 0.0 ? 2.0 * tps[j] / den : 0.0;
        if (dice > best_dice) {
            best_dice = dice;
            best_j = j;
        }
    }

    ThresholdResult result;
    result.threshold = static_cast<double>(best_j) / levels;
    result.dice = best_dice;
    result.mask = BinaryMask(gray.width, gray.height);
    for (std::size_t i = 0; i < gray.size(); ++i)
        result.mask.data[i] = gray.data[i] >= result.threshold ? 1 : 0;
    return result;
}

/// Experiment pipeline for one mask: anti-alias low-pass at the resampling
/// Nyquist (0.5/k), bilinear downsample by k (ceiling dims), bilinear upsample
/// back, then Dice-optimal rethresholding against the original mask.
inline BinaryMask degrade_mask(const BinaryMask& mask, const DegradeConfig& config) {
    if (config.factor < 1) throw ValueError("degrade_mask: factor must be >= 1");
    if (mask.empty_foreground()) throw ValueError("degrade_mask: mask has no foreground");
    GrayImage g = mask.to_gray_image();
    g = lowpass(g, 0.5 / config.factor);
    const int dw = (mask.width + config.factor - 1) / config.factor;
    const int dh = (mask.height + config.factor - 1) / config.factor;
    g = resize_bilinear(g, dw, dh);
    g = resize_bilinear(g, mask.width, mask.height);
    return optimal_threshold(g, mask, config.threshold_levels).mask;
}

struct DegradationRow {
    int factor = 0;
    SegMetrics metrics;  // per-image means over the dataset
};

/// Per-dataset table: degrade every mask at every factor and average the
/// defined per-image metrics in manifest order.
inline std::vector<DegradationRow> run_experiment1(const DatasetManifest& manifest,
                                                   const std::vector<int>& factors,
                                                   int threshold_levels = 256, int jobs = 1) {
    if (factors.empty()) throw ValueError("run_experiment1: factors must be non-empty");
    for (int f : factors)
        if (f < 1) throw ValueError("run_experiment1: factors must be >= 1");

    const std::size_t n_items = manifest.items.size();
    std::vector<std::vector<SegMetrics>> per_image(factors.size(),
                                                   std::vector<SegMetrics>(n_items));
    parallel_for(n_items, jobs, [&](std::size_t i) {
        const auto& item = manifest.items[i];
        BinaryMask mask;
        try {
            mask = load_mask(item.mask);
        } catch (const IoError& e) {
            throw IoError("item " + std::to_string(i) + " (" + item.mask.string() + "): " +
                          e.what());
        }
        for (std::size_t fi = 0; fi < factors.size(); ++fi) {
            DegradeConfig cfg{factors[fi], threshold_levels};
            const BinaryMask degraded = degrade_mask(mask, cfg);
            per_image[fi][i] = seg_metrics(degraded, mask);
        }
    });

    std::vector<DegradationRow> rows;
    rows.reserve(factors.size());
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        DegradationRow row;
        row.factor = factors[fi];
        auto mean = [&](std::optional<double> SegMetrics::*member) {
            std::vector<std::optional<double>> vals;
            vals.reserve(n_items);
            for (const auto& m : per_image[fi]) vals.push_back(m.*member);
            return mean_of_defined(vals);
        };
        row.metrics.se = mean(&SegMetrics::se);
        row.metrics.sp = mean(&SegMetrics::sp);
        row.metrics.a = mean(&SegMetrics::a);
        row.metrics.ba = mean(&SegMetrics::ba);
        row.metrics.d = mean(&SegMetrics::d);
        row.metrics.j = mean(&SegMetrics::j);
        row.metrics.e = mean(&SegMetrics::e);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string to_csv(const std::string& dataset, const std::vector<DegradationRow>& rows,
                          bool fixed4 = false) {
    std::string out = "dataset,factor,se,sp,a,ba,d,j,e\n";
    for (const auto& row : rows)
        out += dataset + "," + std::to_string(row.factor) + "," +
               metrics_csv_fields(row.metrics, fixed4) + "\n";
    return out;
}

}  // namespace segc
