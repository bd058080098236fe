#pragma once

#include <stdexcept>
#include <string>

namespace coverbench {

// Everything that can go wrong carries one of these codes. The CLI maps
// Validation-class failures to exit 2 and BudgetExceeded to exit 3.
enum class ErrorCode {
    UncoverableInstance,
    UnreachableTerminal,
    UnreachableCoreVertex,
    NoFeasibleRoot,
    NoCoverableTerminal,
    StalledOracle,
    BudgetExceeded,
    ParseError,
    BadParameters,
    DegreeMismatch,
    ParameterMismatch,
    Overflow,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::UncoverableInstance:   return "UncoverableInstance";
        case ErrorCode::UnreachableTerminal:   return "UnreachableTerminal";
        case ErrorCode::UnreachableCoreVertex: return "UnreachableCoreVertex";
        case ErrorCode::NoFeasibleRoot:        return "NoFeasibleRoot";
        case ErrorCode::NoCoverableTerminal:   return "NoCoverableTerminal";
        case ErrorCode::StalledOracle:         return "StalledOracle";
        case ErrorCode::BudgetExceeded:        return "BudgetExceeded";
        case ErrorCode::ParseError:            return "ParseError";
        case ErrorCode::BadParameters:         return "BadParameters";
        case ErrorCode::DegreeMismatch:        return "DegreeMismatch";
        case ErrorCode::ParameterMismatch:     return "ParameterMismatch";
        case ErrorCode::Overflow:              return "Overflow";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace coverbench
