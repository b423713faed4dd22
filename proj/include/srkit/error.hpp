#pragma once

#include <stdexcept>
#include <string>

namespace srkit {

enum class ErrorCode {
    TooSmall,
    BadLength,
    RowNotPermutation,
    SyntaxError,
    OddNotSupported,
    NotEvenCycle,
    TooLargeForOracle,
    TooLargeForExact,
    Unsolvable,
    BudgetExceeded,
    VerificationFailed,
    DegenerateInput,
    UnsupportedCombination,
    InvalidArgument,
    IoError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, int line = 0)
        : std::runtime_error(what), code_(code), line_(line) {}

    ErrorCode code() const noexcept { return code_; }
    // 1-based source line for SyntaxError, 0 otherwise
    int line() const noexcept { return line_; }

private:
    ErrorCode code_;
    int line_;
};

} // namespace srkit
