#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace exg {

enum class ErrorCode {
    invalid_argument,
    parse_error,
    validation_error,
    out_of_range,
    cap_exceeded,
    solver_failure,
    unknown_name,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace exg
