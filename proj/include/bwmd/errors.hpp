#pragma once

#include <stdexcept>
#include <string>

namespace bwmd {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or incompatible inputs (alphabet mismatch, bad k, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem and file-format problems.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Inputs that are structurally valid but too small/empty for the requested
/// operation (e.g. embedding a sequence with no countable transitions).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace bwmd
