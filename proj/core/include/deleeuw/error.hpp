#pragma once

#include <stdexcept>
#include <string>

namespace deleeuw {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad exponent, t <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical requirement could not be met (insufficient decay, band too small).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or configuration. Carries the offending path/field.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what) {}
};

}  // namespace deleeuw
