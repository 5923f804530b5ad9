#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taxolex {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax error in a pattern string or a structured input file.
// `position` is a 0-based byte offset into the offending text when known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    explicit ParseError(const std::string& message)
        : Error(message), position_(0) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// File system or serialization failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace taxolex
