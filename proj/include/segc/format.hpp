#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace segc {

/// Shortest representation that round-trips the exact double value.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Fixed 4-decimal formatting used for eyeball comparison tables.
inline std::string format_fixed4(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
}

inline std::string format_optional(const std::optional<double>& v, bool fixed4 = false) {
    if (!v) return "null";
    return fixed4 ? format_fixed4(*v) : format_double(*v);
}

}  // namespace segc
