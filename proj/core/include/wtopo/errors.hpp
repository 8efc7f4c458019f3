#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wtopo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input that parses but violates a structural invariant (self-loop, bad weight, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied argument is outside its documented domain.
class ArgumentError : public Error {
public:
    using Error::Error;
};

} // namespace wtopo
