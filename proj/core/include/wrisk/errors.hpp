#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wrisk {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (bad CSV row, bad JSON). Carries a 1-based line
/// number when the source is line-oriented, 0 otherwise.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A value outside its documented domain (score out of [0, score_max],
/// negative divergence, rate outside [0,1]).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or parameters (bad tail fraction, missing category
/// prior, division-domain violations).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Not enough data to carry out the requested computation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a structure (histogram bin grids) do not.
class IncompatibilityError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wrisk
