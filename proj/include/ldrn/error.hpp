#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ldrn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed JSON input. The message starts with a JSON-path location such as `$.layers[2].nodes[0].rx`.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A structurally well-formed network or artifact that breaks one or more model invariants.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// An internal invariant of the code construction failed. Indicates a bug, never bad luck.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace ldrn
