#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace droneroute {

enum class ErrorCode {
    NotFound,
    Validation,
    Schema,
    Pairing,
    Domain,
    Capacity,
    Schedule,
    Parse,
    Conflict,
    Io,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::vector<std::string> details = {})
        : std::runtime_error(std::move(message)), code_(code), details_(std::move(details)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    ErrorCode code_;
    std::vector<std::string> details_;
};

}  // namespace droneroute
