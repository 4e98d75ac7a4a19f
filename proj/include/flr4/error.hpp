// error.hpp — error codes shared by every flr4 module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flr4 {

enum class ErrorCode {
    NegativeRate,
    InvalidParameter,
    TraceLeak,
    SingularLiouvillian,
    StepSizeTooLarge,
    ResolventSingular,
    PoleGuard,
    HorizonTooShort,
    InvalidGrid,
    UnknownPoint,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All recoverable failures in the library are reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace flr4
