#pragma once

#include <stdexcept>
#include <string>

namespace vanetcast {

// Invalid argument to a library operation (bad parameter range, bad size).
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Request that is valid but cannot be honored at the configured limits,
// e.g. an exact evaluation past the enumeration ceiling.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A broadcast-location density that is identically zero: no vehicle can
// receive from the given layout.
struct DisconnectedLayoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text input (config file, topology fixture, CSV) that does not parse.
struct ParseError : std::runtime_error {
    ParseError(const std::string& message_, int line_number)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + message_),
          message(message_),
          line(line_number) {}
    std::string message;  // without the line prefix
    int line;
};

}  // namespace vanetcast
