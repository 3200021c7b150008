#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace segc {

// Invalid argument / contract violation (CLI maps these to exit code 1).
class ValueError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// File system / stream failure (exit code 2).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure, e.g. a quantity required to be defined is not (exit code 3).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Netpbm parse failure carrying the byte offset where parsing stopped.
class PnmError : public IoError {
public:
    enum class Kind {
        BadMagic,
        BadHeader,
        ValueOutOfRange,
        Truncated,
    };

    PnmError(Kind kind, std::size_t offset, const std::string& detail)
        : IoError(describe(kind) + " at byte " + std::to_string(offset) + ": " + detail),
          kind_(kind),
          offset_(offset) {}

    Kind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    static std::string describe(Kind k) {
        switch (k) {
            case Kind::BadMagic: return "unsupported magic number";
            case Kind::BadHeader: return "malformed header";
            case Kind::ValueOutOfRange: return "sample value out of range";
            case Kind::Truncated: return "truncated payload";
        }
        return "netpbm error";
    }

    Kind kind_;
    std::size_t offset_;
};

}  // namespace segc
