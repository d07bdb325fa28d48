#pragma once

#include <stdexcept>
#include <string>

namespace hkan {

// Numerically invalid arguments: NaN/Inf entries, negative regularization,
// empty shapes, out-of-range parameters.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operand shapes disagree (matrix rows vs vector length, column counts).
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// File-level problems: missing file, malformed content.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A cell or row could not be parsed; message names the offending row.
class ParseError : public DataError {
public:
    using DataError::DataError;
};

// A table with no data rows.
class EmptyDataset : public DataError {
public:
    using DataError::DataError;
};

} // namespace hkan
