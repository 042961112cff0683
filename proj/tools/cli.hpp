#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace droneroute::cli {

// Exit codes. Usage errors come back from CLI11 (its own nonzero codes).
enum Exit : int {
    kOk = 0,
    kNotFound = 3,
    kInvalid = 4,   // validation, domain, capacity, schedule
    kPairing = 5,   // also stream conflicts
    kIo = 6,
    kSchema = 7,    // schema and parse
    kInternal = 70,
};

// `args` excludes the program name. Failures print one JSON error line to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace droneroute::cli
