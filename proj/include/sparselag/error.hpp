#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparselag {

// Exit codes are stable: the CLI returns static_cast<int>(code).
enum class ErrorCode : int {
    ok = 0,
    config = 2,          // bad flag, unknown column, bad config file
    parse = 3,           // malformed CSV cell, missing value
    invalid_order = 4,   // lag order / split / length preconditions
    degenerate = 5,      // zero-variance data where variation is required
    numerical = 6,       // solver or tuning failure
    model_format = 7,    // unreadable or incompatible model file
    io = 8,
    method_mismatch = 9, // inference requested on a penalized exogenous fit
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace sparselag
