#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched bit counts, qubit counts or parameter vector lengths.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An operation would exceed an explicit size guard (term count, qubit count).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A value is outside its declared domain (encode range, bit/spin values,
/// missing variables in an assignment).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid use of an API (unbound circuit parameters and similar).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Parameter training aborted (non-finite objective and similar).
class OptimizerError : public Error {
public:
    using Error::Error;
};

/// Syntax or lowering error in an objective expression. Carries the byte
/// range [begin, end) of the offending input slice.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t begin, std::size_t end)
        : Error(message + " (at bytes " + std::to_string(begin) + ".." + std::to_string(end) + ")"),
          begin_(begin),
          end_(end) {}

    std::size_t begin() const noexcept { return begin_; }
    std::size_t end() const noexcept { return end_; }

private:
    std::size_t begin_;
    std::size_t end_;
};

} // namespace polyq
