#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cesaro {

enum class ErrorCode {
    DimensionMismatch,
    SingularMatrix,
    NotPSD,
    NotHermitian,
    RankDeficient,
    ConvergenceFailure,
    NotPowerBounded,
    NotConverging,
    WrongDimension,
    NotC11,
    Infeasible,
    NotPositiveDefinite,
    RankMismatch,
    NotInSpectralSet,
    HorizonTooSmall,
    HorizonOverflow,
    InvalidArgument,
    Parse,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotPowerBounded: return "NotPowerBounded";
    case ErrorCode::NotConverging: return "NotConverging";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotC11: return "NotC11";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotInSpectralSet: return "NotInSpectralSet";
    case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorCode::HorizonOverflow: return "HorizonOverflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

/// Single exception type for the library; the code drives CLI exit statuses.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace cesaro
