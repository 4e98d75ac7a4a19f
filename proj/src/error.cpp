// error.cpp — error code names

#include "flr4/error.hpp"

namespace flr4 {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::TraceLeak: return "TraceLeak";
    case ErrorCode::SingularLiouvillian: return "SingularLiouvillian";
    case ErrorCode::StepSizeTooLarge: return "StepSizeTooLarge";
    case ErrorCode::ResolventSingular: return "ResolventSingular";
    case ErrorCode::PoleGuard: return "PoleGuard";
    case ErrorCode::HorizonTooShort: return "HorizonTooShort";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::UnknownPoint: return "UnknownPoint";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace flr4
