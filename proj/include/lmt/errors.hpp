#pragma once

#include <stdexcept>
#include <string>

namespace lmt {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument values (bad limit, empty shift set, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// A requested n or X falls outside the interval covered by a table.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Failure reading or writing a byte sink/source.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed or truncated table file (bad magic, version, length mismatch).
class FormatError : public IoError {
public:
    using IoError::IoError;
};

/// An estimated allocation exceeds the configured memory budget.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A statistic is undefined for the given data (zero marginal, zero
/// normalizer, too few points, zero variance).
class DegenerateStatisticError : public Error {
public:
    using Error::Error;
};

} // namespace lmt
