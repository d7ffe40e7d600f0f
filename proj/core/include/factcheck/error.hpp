#pragma once

#include <stdexcept>
#include <string>

namespace factcheck {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: URLs, config files, serialized artifacts.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The data cannot support the requested operation (e.g. a single-class
/// training set).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace factcheck
