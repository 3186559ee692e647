#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clutterscan {

enum class ErrorCode {
    RankDeficient,
    DimensionMismatch,
    ChartSingular,
    BudgetExceeded,
    EmptyFamily,
    CellCollision,
    BoxViolation,
    EpsTooLarge,
    OutOfDomain,
    NotInClass,
    DegenerateTangent,
    ParamOrder,
    Unsupported,
    DegenerateFit,
    InvalidArgument,
    ParseError,
    UnsupportedDims,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ChartSingular: return "ChartSingular";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::EmptyFamily: return "EmptyFamily";
        case ErrorCode::CellCollision: return "CellCollision";
        case ErrorCode::BoxViolation: return "BoxViolation";
        case ErrorCode::EpsTooLarge: return "EpsTooLarge";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::NotInClass: return "NotInClass";
        case ErrorCode::DegenerateTangent: return "DegenerateTangent";
        case ErrorCode::ParamOrder: return "ParamOrder";
        case ErrorCode::Unsupported: return "Unsupported";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::UnsupportedDims: return "UnsupportedDims";
    }
    return "Unknown";
}

}  // namespace clutterscan
