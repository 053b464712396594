#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace framekit {

enum class ErrorCode {
    NotSquare,
    NotHermitian,
    DimMismatch,
    NotAFrame,
    NotParseval,
    ZeroVector,
    NotOrthonormal,
    NoComplement,
    BadOrder,
    OrbitOverflow,
    ZeroSeed,
    BadName,
    OutOfRange,
    InvalidNode,
    IndexRange,
    BadGenerator,
    DimUnsupported,
    BoxTooLarge,
    EmptyInput,
    BadDims,
    NotUnit,
    ParseError,
    NoConvergence,
};

inline constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::NotParseval: return "NotParseval";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NoComplement: return "NoComplement";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::OrbitOverflow: return "OrbitOverflow";
    case ErrorCode::ZeroSeed: return "ZeroSeed";
    case ErrorCode::BadName: return "BadName";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::IndexRange: return "IndexRange";
    case ErrorCode::BadGenerator: return "BadGenerator";
    case ErrorCode::DimUnsupported: return "DimUnsupported";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BadDims: return "BadDims";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code next to the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace framekit
