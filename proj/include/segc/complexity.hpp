#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "segc/format.hpp"
#include "segc/manifest.hpp"
#include "segc/netpbm.hpp"
#include "segc/parallel.hpp"
#include "segc/raster.hpp"
#include "segc/segmetrics.hpp"
#include "segc/spectra.hpp"

namespace segc {

/// Joint probability density of per-pixel gradient pairs (gx, gy), stored as a
/// (2G+1) x (2G+1) grid where G is the largest absolute gradient present.
struct Deldensity {
    int half_range = 0;
    std::vector<double> p;

    int side() const { return 2 * half_range + 1; }
    double at(int gx, int gy) const {
        return p[static_cast<std::size_t>(gy + half_range) * side() + (gx + half_range)];
    }
};

namespace detail {

// Central difference of 8-bit levels, halved and rounded half away from zero,
// so a ramp of one level per pixel lands in a single gradient bin at both the
// interior and the replicated edges.
inline int half_rounded(int d) {
    const int mag = (std::abs(d) + 1) / 2;
    return d < 0 ? -mag : mag;
}

inline std::vector<int> quantize_levels(const GrayImage& img) {
    std::vector<int> levels(img.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        levels[i] = static_cast<int>(std::lround(img.data[i] * 255.0));
    return levels;
}

}  // namespace detail

inline Deldensity deldensity(const GrayImage& img) {
    if (img.width < 2 || img.height < 2) throw ValueError("deldensity: image must be at least 2x2");
    const std::vector<int> levels = detail::quantize_levels(img);
    const int w = img.width, h = img.height;
    auto level = [&](int x, int y) { return levels[static_cast<std::size_t>(y) * w + x]; };

    std::vector<int> gx(img.size()), gy(img.size());
    int max_abs = 0;
    for (int y = 0; y < h; ++y) {
        const int yu = std::max(y - 1, 0);
        const int yd = std::min(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xl = std::max(x - 1, 0);
            const int xr = std::min(x + 1, w - 1);
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            gx[i] = detail::half_rounded(level(xr, y) - level(xl, y));
            gy[i] = detail::half_rounded(level(x, yd) - level(x, yu));
            max_abs = std::max({max_abs, std::abs(gx[i]), std::abs(gy[i])});
        }
    }

    Deldensity dd;
    dd.half_range = max_abs;
    dd.p.assign(static_cast<std::size_t>(dd.side()) * dd.side(), 0.0);
    const double inv_n = 1.0 / static_cast<double>(img.size());
    for (std::size_t i = 0; i < img.size(); ++i)
        dd.p[static_cast<std::size_t>(gy[i] + max_abs) * dd.side() + (gx[i] + max_abs)] += inv_n;
    return dd;
}

/// Shannon entropy of the deldensity with the 1/2 gradient-symmetry factor,
/// normalized so a uniform density over the full [-255,255]^2 grid maps to 1.
inline double delentropy(const Deldensity& dd) {
    double h = 0.0;
    for (double p : dd.p)
        if (p > 0.0) h -= p * std::log2(p);
    h *= 0.5;
    return h / std::log2(511.0);
}

inline double delentropy(const GrayImage& img) { return delentropy(deldensity(img)); }

/// Power-weighted spectral centroid; undefined for a zero-power spectrum.
inline std::optional<double> mnf(const PowerSpectrum& ps) {
    const double total = ps.total();
    if (ps.degenerate || total <= 0.0) return std::nullopt;
    double acc = 0.0;
    for (int b = 0; b < ps.bins(); ++b) acc += ps.bin_center[b] * ps.power[b];
    return acc / total;
}

/// Smallest bin center at which cumulative power reaches half the total;
/// an exact half at a bin resolves to that (lower) bin.
inline std::optional<double> mdf(const PowerSpectrum& ps) {
    const double total = ps.total();
    if (ps.degenerate || total <= 0.0) return std::nullopt;
    const double half = total / 2.0;
    double cum = 0.0;
    for (int b = 0; b < ps.bins(); ++b) {
        cum += ps.power[b];
        if (cum >= half) return ps.bin_center[b];
    }
    return ps.bin_center[ps.bins() - 1];
}

namespace detail {

// Marching-squares contour of the 0.5 level over the bilinear interpolant of
// the background-padded mask. Binary corner values put every edge crossing at
// the edge midpoint; saddle cells (center value exactly at the level) are
// split so the diagonal foreground corners stay disconnected. Vertices are
// keyed by doubled coordinates so midpoints hash exactly.
struct ContourGraph {
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> adj;

    static std::uint64_t key(std::uint32_t x, std::uint32_t y) {
        return (static_cast<std::uint64_t>(x) << 32) | y;
    }

    void add_edge(std::uint64_t a, std::uint64_t b) {
        link(a, b);
        link(b, a);
    }

    void link(std::uint64_t from, std::uint64_t to) {
        auto [it, inserted] = adj.try_emplace(from, std::pair<std::uint64_t, std::uint64_t>{to, kNone});
        if (!inserted) it->second.second = to;
    }

    static constexpr std::uint64_t kNone = ~std::uint64_t{0};
};

inline ContourGraph trace_contour(const BinaryMask& mask) {
    ContourGraph g;
    const int w = mask.width, h = mask.height;
    auto fg = [&](int x, int y) {
        return x >= 0 && x < w && y >= 0 && y < h && mask.at(x, y);
    };
    // cells over the padded grid: corner (cx,cy) maps to mask pixel (cx-1,cy-1)
    for (int cy = 0; cy <= h; ++cy) {
        for (int cx = 0; cx <= w; ++cx) {
            const bool tl = fg(cx - 1, cy - 1);
            const bool tr = fg(cx, cy - 1);
            const bool br = fg(cx, cy);
            const bool bl = fg(cx - 1, cy);
            const int c = (tl ? 1 : 0) | (tr ? 2 : 0) | (br ? 4 : 0) | (bl ? 8 : 0);
            if (c == 0 || c == 15) continue;
            const std::uint64_t T = ContourGraph::key(2 * cx + 1, 2 * cy);
            const std::uint64_t R = ContourGraph::key(2 * cx + 2, 2 * cy + 1);
            const std::uint64_t B = ContourGraph::key(2 * cx + 1, 2 * cy + 2);
            const std::uint64_t L = ContourGraph::key(2 * cx, 2 * cy + 1);
            switch (c) {
                case 1: case 14: g.add_edge(L, T); break;
                case 2: case 13: g.add_edge(T, R); break;
                case 3: case 12: g.add_edge(L, R); break;
                case 4: case 11: g.add_edge(R, B); break;
                case 6: case 9: g.add_edge(T, B); break;
                case 7: case 8: g.add_edge(L, B); break;
                case 5:
                    g.add_edge(L, T);
                    g.add_edge(R, B);
                    break;
                case 10:
                    g.add_edge(T, R);
                    g.add_edge(B, L);
                    break;
            }
        }
    }
    return g;
}

// Length of a closed loop after one binomial smoothing pass of its vertices.
// The raw midpoint polygon overestimates smooth boundaries by about 5%
// (metrication bias); the smoothed polygon is nearly unbiased for disks while
// leaving axis-aligned runs intact.
inline double smoothed_loop_length(const std::vector<std::pair<double, double>>& loop) {
    const std::size_t n = loop.size();
    if (n < 3) return 0.0;
    auto smoothed = [&](std::size_t i) {
        const auto& a = loop[(i + n - 1) % n];
        const auto& b = loop[i];
        const auto& c = loop[(i + 1) % n];
        return std::pair<double, double>{(a.first + 2 * b.first + c.first) / 4.0,
                                         (a.second + 2 * b.second + c.second) / 4.0};
    };
    double len = 0.0;
    std::pair<double, double> prev = smoothed(0);
    for (std::size_t i = 1; i <= n; ++i) {
        std::pair<double, double> cur = smoothed(i % n);
        len += std::hypot(cur.first - prev.first, cur.second - prev.second);
        prev = cur;
    }
    return len;
}

}  // namespace detail

/// Total 0.5-level contour length of the mask foreground (all components
/// summed). Exposed separately from the complexity ratio for testing.
inline double contour_perimeter(const BinaryMask& mask) {
    detail::ContourGraph g = detail::trace_contour(mask);
    std::unordered_map<std::uint64_t, bool> visited;
    visited.reserve(g.adj.size());
    double total = 0.0;
    for (const auto& [start, nbrs] : g.adj) {
        if (visited[start]) continue;
        std::vector<std::pair<double, double>> loop;
        std::uint64_t prev = detail::ContourGraph::kNone;
        std::uint64_t cur = start;
        while (true) {
            visited[cur] = true;
            loop.emplace_back(static_cast<double>(static_cast<std::uint32_t>(cur >> 32)) / 2.0,
                              static_cast<double>(static_cast<std::uint32_t>(cur)) / 2.0);
            const auto& [n1, n2] = g.adj.at(cur);
            std::uint64_t next = (n1 != prev) ? n1 : n2;
            prev = cur;
            cur = next;
            if (cur == start) break;
        }
        total += detail::smoothed_loop_length(loop);
    }
    return total;
}

/// P^2 / (4*pi*A) with A the foreground pixel count; 1 for an ideal disk by
/// the isoperimetric inequality, large for thin or fragmented foregrounds.
inline double perimetric_complexity(const BinaryMask& mask) {
    const std::size_t area = mask.foreground_count();
    if (area == 0) throw NumericError("perimetric_complexity: empty mask");
    const double p = contour_perimeter(mask);
    return p * p / (4.0 * fftdetail::kPi * static_cast<double>(area));
}

/// Per-image measures plus dataset-level aggregation. Undefined measures
/// (blank image, empty mask) stay null and are excluded from the means.
struct ImageComplexity {
    std::string path;
    std::optional<double> de, mnf, mdf, pc;
};

struct ComplexityReport {
    std::string dataset;
    std::vector<ImageComplexity> per_image;
    std::optional<double> de, mnf, mdf, pc;  // aggregate means
};

inline ImageComplexity complexity_of(const GrayImage& img, const BinaryMask& mask,
                                     int bins = kDefaultSpectrumBins) {
    ImageComplexity out;
    if (img.width >= 2 && img.height >= 2) {
        out.de = delentropy(img);
        const PowerSpectrum ps = radial_power_spectrum(img, bins);
        out.mnf = mnf(ps);
        out.mdf = mdf(ps);
    }
    if (!mask.empty_foreground()) out.pc = perimetric_complexity(mask);
    return out;
}

inline ComplexityReport complexity_report(const DatasetManifest& manifest,
                                          int bins = kDefaultSpectrumBins, int jobs = 1) {
    ComplexityReport report;
    report.dataset = manifest.name;
    report.per_image.resize(manifest.items.size());
    parallel_for(manifest.items.size(), jobs, [&](std::size_t i) {
        const auto& item = manifest.items[i];
        GrayImage img;
        BinaryMask mask;
        try {
            img = load_gray(item.image);
            mask = load_mask(item.mask);
        } catch (const IoError& e) {
            throw IoError("item " + std::to_string(i) + " (" + item.image.string() + ", " +
                          item.mask.string() + "): " + e.what());
        }
        require_same_dims(img.width, img.height, mask.width, mask.height,
                          ("item " + std::to_string(i) + " " + item.image.string()).c_str());
        report.per_image[i] = complexity_of(img, mask, bins);
        report.per_image[i].path = item.image.string();
    });

    auto collect = [&](auto member) {
        std::vector<std::optional<double>> vals;
        vals.reserve(report.per_image.size());
        for (const auto& row : report.per_image) vals.push_back(row.*member);
        return mean_of_defined(vals);
    };
    report.de = collect(&ImageComplexity::de);
    report.mnf = collect(&ImageComplexity::mnf);
    report.mdf = collect(&ImageComplexity::mdf);
    report.pc = collect(&ImageComplexity::pc);
    return report;
}

inline std::string to_csv(const ComplexityReport& report, bool fixed4 = false) {
    std::string out = "path,de,mnf,mdf,pc\n";
    auto row = [fixed4](const std::string& path, const std::optional<double>& de,
                        const std::optional<double>& mnf_v, const std::optional<double>& mdf_v,
                        const std::optional<double>& pc) {
        return path + "," + format_optional(de, fixed4) + "," + format_optional(mnf_v, fixed4) +
               "," + format_optional(mdf_v, fixed4) + "," + format_optional(pc, fixed4) + "\n";
    };
    for (const auto& img : report.per_image) out += row(img.path, img.de, img.mnf, img.mdf, img.pc);
    out += row("aggregate", report.de, report.mnf, report.mdf, report.pc);
    return out;
}

inline nlohmann::json to_json(const ComplexityReport& report) {
    auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json items = nlohmann::json::array();
    for (const auto& img : report.per_image)
        items.push_back({{"path", img.path},
                         {"de", opt(img.de)},
                         {"mnf", opt(img.mnf)},
                         {"mdf", opt(img.mdf)},
                         {"pc", opt(img.pc)}});
    return nlohmann::json{{"dataset", report.dataset},
                          {"items", items},
                          {"aggregate",
                           {{"de", opt(report.de)},
                            {"mnf", opt(report.mnf)},
                            {"mdf", opt(report.mdf)},
                            {"pc", opt(report.pc)}}}};
}

}  // namespace segc
