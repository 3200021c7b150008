#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "segc/raster.hpp"

namespace segc {
namespace pnm {

inline std::vector<unsigned char> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    return buf;
}

inline void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
}

// Header scanner for the P1..P6 family. Tracks byte offsets for error reporting.
class Parser {
public:
    explicit Parser(const std::vector<unsigned char>& buf) : buf_(buf) {}

    int magic() {
        if (buf_.size() < 2 || buf_[0] != 'P' || buf_[1] < '1' || buf_[1] > '6')
            throw PnmError(PnmError::Kind::BadMagic, 0, "expected P1..P6");
        pos_ = 2;
        return buf_[1] - '0';
    }

    // Reads a decimal header field, skipping whitespace and '#' comments.
    unsigned next_uint(const char* what, unsigned max_value) {
        skip_space_and_comments();
        if (pos_ >= buf_.size())
            throw PnmError(PnmError::Kind::BadHeader, pos_, std::string("missing ") + what);
        if (!is_digit(buf_[pos_]))
            throw PnmError(PnmError::Kind::BadHeader, pos_, std::string("expected digit for ") + what);
        std::size_t start = pos_;
        unsigned long long v = 0;
        while (pos_ < buf_.size() && is_digit(buf_[pos_])) {
            v = v * 10 + (buf_[pos_] - '0');
            if (v > 10u * max_value)
                throw PnmError(PnmError::Kind::ValueOutOfRange, start,
                               std::string(what) + " too large");
            ++pos_;
        }
        if (v == 0 || v > max_value)
            throw PnmError(PnmError::Kind::ValueOutOfRange, start,
                           std::string(what) + " must be in [1," + std::to_string(max_value) + "]");
        return static_cast<unsigned>(v);
    }

    // One whitespace byte separates the header from a binary payload.
    void begin_binary_payload() {
        if (pos_ >= buf_.size() || !is_space(buf_[pos_]))
            throw PnmError(PnmError::Kind::BadHeader, pos_, "expected whitespace before payload");
        ++pos_;
    }

    unsigned char payload_byte() {
        if (pos_ >= buf_.size())
            throw PnmError(PnmError::Kind::Truncated, buf_.size(), "payload ended early");
        return buf_[pos_++];
    }

    unsigned payload_sample(unsigned maxval) {
        unsigned v = payload_byte();
        if (maxval > 255) v = (v << 8) | payload_byte();
        if (v > maxval)
            throw PnmError(PnmError::Kind::ValueOutOfRange, pos_ - 1, "sample exceeds maxval");
        return v;
    }

    // ASCII payload sample (P1 allows digits with no separators).
    unsigned ascii_sample(unsigned maxval, bool single_digit) {
        skip_space_and_comments();
        if (pos_ >= buf_.size())
            throw PnmError(PnmError::Kind::Truncated, buf_.size(), "payload ended early");
        if (!is_digit(buf_[pos_]))
            throw PnmError(PnmError::Kind::BadHeader, pos_, "expected numeric sample");
        std::size_t start = pos_;
        unsigned long long v = 0;
        if (single_digit) {
            v = buf_[pos_++] - '0';
        } else {
            while (pos_ < buf_.size() && is_digit(buf_[pos_])) {
                v = v * 10 + (buf_[pos_] - '0');
                if (v > 65535)
                    throw PnmError(PnmError::Kind::ValueOutOfRange, start, "sample too large");
                ++pos_;
            }
        }
        if (v > maxval)
            throw PnmError(PnmError::Kind::ValueOutOfRange, start, "sample exceeds maxval");
        return static_cast<unsigned>(v);
    }

    std::size_t pos() const { return pos_; }

private:
    static bool is_space(unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    }
    static bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

    void skip_space_and_comments() {
        while (pos_ < buf_.size()) {
            if (is_space(buf_[pos_])) {
                ++pos_;
            } else if (buf_[pos_] == '#') {
                while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& buf_;
    std::size_t pos_ = 0;
};

struct RawPnm {
    int magic = 0;       // 1..6
    int width = 0;
    int height = 0;
    unsigned maxval = 1;           // 1 for PBM
    std::vector<unsigned> samples;  // row-major; 3 per pixel for PPM; PBM: 1 = foreground
};

inline RawPnm decode(const std::vector<unsigned char>& bytes) {
    Parser p(bytes);
    RawPnm out;
    out.magic = p.magic();
    out.width = static_cast<int>(p.next_uint("width", 1u << 20));
    out.height = static_cast<int>(p.next_uint("height", 1u << 20));
    const bool pbm = out.magic == 1 || out.magic == 4;
    const bool ppm = out.magic == 3 || out.magic == 6;
    out.maxval = pbm ? 1 : p.next_uint("maxval", 65535);
    const std::size_t n = static_cast<std::size_t>(out.width) * out.height * (ppm ? 3 : 1);
    out.samples.resize(n);
    switch (out.magic) {
        case 1:
            for (std::size_t i = 0; i < n; ++i) out.samples[i] = p.ascii_sample(1, true);
            break;
        case 2:
        case 3:
            for (std::size_t i = 0; i < n; ++i) out.samples[i] = p.ascii_sample(out.maxval, false);
            break;
        case 4: {
            p.begin_binary_payload();
            const int row_bytes = (out.width + 7) / 8;
            for (int y = 0; y < out.height; ++y) {
                for (int xb = 0; xb < row_bytes; ++xb) {
                    unsigned char b = p.payload_byte();
                    for (int bit = 0; bit < 8; ++bit) {
                        int x = xb * 8 + bit;
                        if (x < out.width)
                            out.samples[static_cast<std::size_t>(y) * out.width + x] =
                                (b >> (7 - bit)) & 1u;
                    }
                }
            }
            break;
        }
        case 5:
        case 6:
            p.begin_binary_payload();
            for (std::size_t i = 0; i < n; ++i) out.samples[i] = p.payload_sample(out.maxval);
            break;
    }
    return out;
}

inline void append(std::vector<unsigned char>& out, const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
}

inline std::vector<unsigned char> encode(const RawPnm& img) {
    std::vector<unsigned char> out;
    const bool pbm = img.magic == 1 || img.magic == 4;
    append(out, "P" + std::to_string(img.magic) + "\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n");
    if (!pbm) append(out, std::to_string(img.maxval) + "\n");
    switch (img.magic) {
        case 1: {
            int col = 0;
            for (std::size_t i = 0; i < img.samples.size(); ++i) {
                out.push_back(img.samples[i] ? '1' : '0');
                if (++col == 64 || (i + 1) % img.width == 0) {
                    out.push_back('\n');
                    col = 0;
                }
            }
            break;
        }
        case 2:
        case 3: {
            const std::size_t per_row = img.samples.size() / img.height;
            for (int y = 0; y < img.height; ++y) {
                std::string row;
                for (std::size_t i = 0; i < per_row; ++i) {
                    if (i) row += ' ';
                    row += std::to_string(img.samples[static_cast<std::size_t>(y) * per_row + i]);
                }
                row += '\n';
                append(out, row);
            }
            break;
        }
        case 4: {
            const int row_bytes = (img.width + 7) / 8;
            for (int y = 0; y < img.height; ++y) {
                for (int xb = 0; xb < row_bytes; ++xb) {
                    unsigned char b = 0;
                    for (int bit = 0; bit < 8; ++bit) {
                        int x = xb * 8 + bit;
                        if (x < img.width &&
                            img.samples[static_cast<std::size_t>(y) * img.width + x])
                            b |= 1u << (7 - bit);
                    }
                    out.push_back(b);
                }
            }
            break;
        }
        case 5:
        case 6:
            for (unsigned v : img.samples) {
                if (img.maxval > 255) out.push_back(static_cast<unsigned char>(v >> 8));
                out.push_back(static_cast<unsigned char>(v & 0xff));
            }
            break;
    }
    return out;
}

}  // namespace pnm

inline GrayImage decode_gray(const std::vector<unsigned char>& bytes) {
    pnm::RawPnm raw = pnm::decode(bytes);
    if (raw.magic == 1 || raw.magic == 4) {
        GrayImage img(raw.width, raw.height);
        for (std::size_t i = 0; i < raw.samples.size(); ++i)
            img.data[i] = raw.samples[i] ? 1.0 : 0.0;
        return img;
    }
    if (raw.magic == 3 || raw.magic == 6) {
        RgbImage rgb;
        rgb.width = raw.width;
        rgb.height = raw.height;
        const std::size_t n = static_cast<std::size_t>(raw.width) * raw.height;
        rgb.r.resize(n);
        rgb.g.resize(n);
        rgb.b.resize(n);
        const double inv = 1.0 / raw.maxval;
        for (std::size_t i = 0; i < n; ++i) {
            rgb.r[i] = raw.samples[3 * i] * inv;
            rgb.g[i] = raw.samples[3 * i + 1] * inv;
            rgb.b[i] = raw.samples[3 * i + 2] * inv;
        }
        return to_gray(rgb);
    }
    GrayImage img(raw.width, raw.height);
    const double inv = 1.0 / raw.maxval;
    for (std::size_t i = 0; i < raw.samples.size(); ++i) img.data[i] = raw.samples[i] * inv;
    return img;
}

inline BinaryMask decode_mask(const std::vector<unsigned char>& bytes) {
    pnm::RawPnm raw = pnm::decode(bytes);
    if (raw.magic == 3 || raw.magic == 6)
        throw PnmError(PnmError::Kind::BadMagic, 0, "PPM is not a mask format");
    BinaryMask mask(raw.width, raw.height);
    if (raw.magic == 1 || raw.magic == 4) {
        for (std::size_t i = 0; i < raw.samples.size(); ++i) mask.data[i] = raw.samples[i] ? 1 : 0;
    } else {
        const double inv = 1.0 / raw.maxval;
        for (std::size_t i = 0; i < raw.samples.size(); ++i)
            mask.data[i] = raw.samples[i] * inv >= 0.5 ? 1 : 0;
    }
    return mask;
}

inline RgbImage decode_rgb(const std::vector<unsigned char>& bytes) {
    pnm::RawPnm raw = pnm::decode(bytes);
    if (raw.magic != 3 && raw.magic != 6)
        throw PnmError(PnmError::Kind::BadMagic, 0, "expected PPM");
    RgbImage rgb;
    rgb.width = raw.width;
    rgb.height = raw.height;
    const std::size_t n = static_cast<std::size_t>(raw.width) * raw.height;
    rgb.r.resize(n);
    rgb.g.resize(n);
    rgb.b.resize(n);
    const double inv = 1.0 / raw.maxval;
    for (std::size_t i = 0; i < n; ++i) {
        rgb.r[i] = raw.samples[3 * i] * inv;
        rgb.g[i] = raw.samples[3 * i + 1] * inv;
        rgb.b[i] = raw.samples[3 * i + 2] * inv;
    }
    return rgb;
}

inline std::vector<unsigned char> encode_gray(const GrayImage& img, bool binary = true,
                                              unsigned maxval = 255) {
    if (maxval < 1 || maxval > 65535) throw ValueError("maxval must be in [1,65535]");
    pnm::RawPnm raw;
    raw.magic = binary ? 5 : 2;
    raw.width = img.width;
    raw.height = img.height;
    raw.maxval = maxval;
    raw.samples.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        long v = std::lround(img.data[i] * maxval);
        raw.samples[i] = static_cast<unsigned>(std::clamp(v, 0l, static_cast<long>(maxval)));
    }
    return pnm::encode(raw);
}

inline std::vector<unsigned char> encode_mask(const BinaryMask& mask, bool binary = true) {
    pnm::RawPnm raw;
    raw.magic = binary ? 4 : 1;
    raw.width = mask.width;
    raw.height = mask.height;
    raw.samples.assign(mask.data.begin(), mask.data.end());
    return pnm::encode(raw);
}

inline std::vector<unsigned char> encode_rgb(const RgbImage& rgb, bool binary = true,
                                             unsigned maxval = 255) {
    pnm::RawPnm raw;
    raw.magic = binary ? 6 : 3;
    raw.width = rgb.width;
    raw.height = rgb.height;
    raw.maxval = maxval;
    const std::size_t n = static_cast<std::size_t>(rgb.width) * rgb.height;
    raw.samples.resize(3 * n);
    auto q = [maxval](double v) {
        return static_cast<unsigned>(
            std::clamp(std::lround(v * maxval), 0l, static_cast<long>(maxval)));
    };
    for (std::size_t i = 0; i < n; ++i) {
        raw.samples[3 * i] = q(rgb.r[i]);
        raw.samples[3 * i + 1] = q(rgb.g[i]);
        raw.samples[3 * i + 2] = q(rgb.b[i]);
    }
    return pnm::encode(raw);
}

inline GrayImage load_gray(const std::filesystem::path& path) {
    return decode_gray(pnm::read_file(path));
}
inline BinaryMask load_mask(const std::filesystem::path& path) {
    return decode_mask(pnm::read_file(path));
}
inline RgbImage load_rgb(const std::filesystem::path& path) {
    return decode_rgb(pnm::read_file(path));
}

inline void write_gray(const std::filesystem::path& path, const GrayImage& img, bool binary = true,
                       unsigned maxval = 255) {
    pnm::write_file(path, encode_gray(img, binary, maxval));
}
inline void write_mask(const std::filesystem::path& path, const BinaryMask& mask,
                       bool binary = true) {
    pnm::write_file(path, encode_mask(mask, binary));
}
inline void write_rgb(const std::filesystem::path& path, const RgbImage& rgb, bool binary = true,
                      unsigned maxval = 255) {
    pnm::write_file(path, encode_rgb(rgb, binary, maxval));
}

}  // namespace segc
