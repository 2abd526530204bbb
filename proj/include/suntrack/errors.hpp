#pragma once

#include <stdexcept>
#include <string>

namespace suntrack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid or matrix shape is wrong (ragged rows, fewer than 2 columns/rows, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A text field could not be parsed; the message names line and field.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A required key is missing from a metadata file.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A value-level invariant is violated (negative weight, NaN, bad scale, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Solver parameters are inconsistent (u1 > u2, start column out of range, ...).
class ParamError : public Error {
public:
    using Error::Error;
};

/// An instance exceeds the hard limits of the brute-force enumerator.
class SizeError : public Error {
public:
    using Error::Error;
};

/// A forecast split cannot be formed (k too large for the row count).
class PartitionError : public Error {
public:
    using Error::Error;
};

} // namespace suntrack
