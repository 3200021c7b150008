#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "segc/format.hpp"
#include "segc/raster.hpp"

namespace segc {

/// Mean over the defined entries; nullopt when none are defined.
inline std::optional<double> mean_of_defined(const std::vector<std::optional<double>>& values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : values)
        if (v) {
            sum += *v;
            ++n;
        }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + tn + fp + fn; }
};

/// Pixel-wise confusion counts of a segmentation S against ground truth G.
inline ConfusionCounts confusion(const BinaryMask& s, const BinaryMask& g) {
    require_same_dims(s.width, s.height, g.width, g.height, "confusion");
    ConfusionCounts c;
    for (std::size_t i = 0; i < s.data.size(); ++i) {
        const bool si = s.data[i] != 0;
        const bool gi = g.data[i] != 0;
        if (si && gi)
            ++c.tp;
        else if (si && !gi)
            ++c.fp;
        else if (!si && gi)
            ++c.fn;
        else
            ++c.tn;
    }
    return c;
}

/// Sensitivity, specificity, accuracy, balanced accuracy, Dice, Jaccard and
/// overlap error. A metric whose denominator is zero is left undefined rather
/// than coerced to 0 or 1, so dataset means are not silently biased.
struct SegMetrics {
    std::optional<double> se, sp, a, ba, d, j, e;
};

inline SegMetrics seg_metrics(const ConfusionCounts& c) {
    if (c.total() == 0) throw ValueError("seg_metrics: empty confusion counts");
    SegMetrics m;
    const double tp = static_cast<double>(c.tp);
    const double tn = static_cast<double>(c.tn);
    const double fp = static_cast<double>(c.fp);
    const double fn = static_cast<double>(c.fn);
    if (c.tp + c.fn > 0) m.se = tp / (tp + fn);
    if (c.tn + c.fp > 0) m.sp = tn / (tn + fp);
    m.a = (tp + tn) / static_cast<double>(c.total());
    if (m.se && m.sp) m.ba = (*m.se + *m.sp) / 2.0;
    if (2 * c.tp + c.fp + c.fn > 0) m.d = 2.0 * tp / (2.0 * tp + fp + fn);
    if (c.tp + c.fp + c.fn > 0) {
        m.j = tp / (tp + fp + fn);
        m.e = 1.0 - *m.j;
    }
    return m;
}

inline SegMetrics seg_metrics(const BinaryMask& s, const BinaryMask& g) {
    return seg_metrics(confusion(s, g));
}

inline std::string metrics_csv_fields(const SegMetrics& m, bool fixed4 = false) {
    return format_optional(m.se, fixed4) + "," + format_optional(m.sp, fixed4) + "," +
           format_optional(m.a, fixed4) + "," + format_optional(m.ba, fixed4) + "," +
           format_optional(m.d, fixed4) + "," + format_optional(m.j, fixed4) + "," +
           format_optional(m.e, fixed4);
}

}  // namespace segc
