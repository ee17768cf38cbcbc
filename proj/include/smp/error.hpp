#pragma once

#include <stdexcept>
#include <string>

namespace smp {

// Base of everything the library throws on bad input.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed file contents. Carries the 1-based line when known.
struct ParseError : Error {
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
    int line;
};

// Well-formed input that violates a precondition (unstable matching, cyclic graph, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A configured size cap was exceeded (enumeration limits, DP width).
struct CapExceeded : Error {
    using Error::Error;
};

} // namespace smp
