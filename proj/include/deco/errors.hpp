#pragma once

#include <stdexcept>
#include <string>

namespace deco {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two quantities with incompatible SI dimensions were combined,
/// or a quantity did not carry the dimension an operation requires.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A numeric input violated an operation's precondition
/// (non-positive mass, strength outside [0,1], division by zero, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The inputs are outside the validity regime of the requested formula
/// (e.g. superposition separation not large against the de Broglie
/// wavelength).  The CLI maps this to exit code 3.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// A configuration document failed schema validation.  Carries the
/// JSON path of the offending field.  The CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace deco
