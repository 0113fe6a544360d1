#pragma once

#include <stdexcept>
#include <string>

namespace qk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed digraph: loop arc or endpoint outside 0..n-1.
struct InvalidDigraph : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

// An operation was called outside its precondition.
struct PreconditionError : Error {
    using Error::Error;
};

// Exhaustive search refused because the instance exceeds the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

// A constructed object failed its own post-validation. Always an
// implementation bug, never an input problem.
struct ConstructionError : Error {
    using Error::Error;
};

} // namespace qk
