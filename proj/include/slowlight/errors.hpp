#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slowlight {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-positive delay, bad grid, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The simulated window cannot contain the pulse after it has crossed the chain.
class HorizonTooShort : public Error {
public:
    HorizonTooShort(double requested, double required);

    double requested() const noexcept { return requested_; }
    double required() const noexcept { return required_; }

private:
    double requested_;
    double required_;
};

/// A measurement could not be taken on the given data (no peak, no crossing, ...).
class MeasurementError : public Error {
public:
    using Error::Error;
};

/// Run configuration text is malformed. `line` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(std::size_t line, std::string field, const std::string& message);

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

}  // namespace slowlight
