#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elicit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A preference would close into a cycle (a voter contradicted an earlier answer).
class InconsistencyError : public Error {
public:
    using Error::Error;
};

class InvalidBounds : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/// Brute-force enumeration refused because the instance is above the configured size.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class NoQueriesLeft : public Error {
public:
    using Error::Error;
};

/// A runtime trace check failed (ordering of possible winners or segment growth).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace elicit
