#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdpp {

enum class ErrorCode {
    InvalidConfig,
    PreconditionViolated,
    NotH1,
    NotH2,
    WrongMode,
    BlowUp,
    BlownUpPath,
    EmptyWindow,
    OffGrid,
    UnknownFunctional,
    InsufficientLevels,
    UnboundedSurrogate,
    ParseError,
    SemanticError,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::NotH1: return "NotH1";
        case ErrorCode::NotH2: return "NotH2";
        case ErrorCode::WrongMode: return "WrongMode";
        case ErrorCode::BlowUp: return "BlowUp";
        case ErrorCode::BlownUpPath: return "BlownUpPath";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::OffGrid: return "OffGrid";
        case ErrorCode::UnknownFunctional: return "UnknownFunctional";
        case ErrorCode::InsufficientLevels: return "InsufficientLevels";
        case ErrorCode::UnboundedSurrogate: return "UnboundedSurrogate";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SemanticError: return "SemanticError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace rdpp
