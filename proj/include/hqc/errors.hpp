#pragma once

#include <stdexcept>
#include <string>

namespace hqc {

/// Invalid static configuration (qubit counts, layer shapes, run settings).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid runtime argument (bad dimensions, non-finite values, malformed targets).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Qubit or element index outside the addressed register.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// File I/O and format errors; messages carry the offending location
/// (row/column for CSV, byte offset for binary formats).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hqc
