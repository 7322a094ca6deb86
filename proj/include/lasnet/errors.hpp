#pragma once

#include <stdexcept>
#include <string>

namespace lasnet {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph too small or otherwise unusable for the requested metric.
class InvalidGraphError : public Error {
public:
    using Error::Error;
};

// Operands have incompatible sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Ratio with an empty denominator (e.g. opportunity ratio of an edgeless graph).
class UndefinedRatioError : public Error {
public:
    using Error::Error;
};

// Error rate at 0 or 1 where the formula requires an interior value.
class DegenerateRateError : public Error {
public:
    using Error::Error;
};

// Every candidate state of a full conditional has zero posterior mass.
class ImpossibleConfigurationError : public Error {
public:
    using Error::Error;
};

// Malformed input data (constructor preconditions, inconsistent array shapes).
class ValidationError : public Error {
public:
    using Error::Error;
};

// File could not be parsed; message carries location information.
class ParseError : public Error {
public:
    using Error::Error;
};

// File system / stream failure.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lasnet
