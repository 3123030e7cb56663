#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace udgl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coordinates or squared distances outside the exactly representable range.
class ModelSizeError : public Error {
public:
    using Error::Error;
};

/// A value that breaks a model invariant (duplicate positions, bad edges, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string & reason) :
        Error("line " + std::to_string(line) + ": " + reason),
        line_(line)
    {
    }

    auto line() const noexcept -> std::size_t { return line_; }

private:
    std::size_t line_;
};

/// The instance generator gave up after its resampling budget.
class GenerationFailure : public Error {
public:
    using Error::Error;
};

/// Some non-anchor can never be reached from the realized set.
class NoEligibleNode : public Error {
public:
    using Error::Error;
};

class MissingNode : public Error {
public:
    using Error::Error;
};

class AnchorMismatch : public Error {
public:
    using Error::Error;
};

/// Brute-force enumeration would exceed its configured work limit.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

} // namespace udgl
