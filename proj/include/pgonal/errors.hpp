#pragma once

#include <stdexcept>
#include <string>

namespace pgonal {

/// Invalid argument or contract violation (bad m, non-primitive tuple, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A p-adic decider ran out of working precision; the result is indeterminate
/// and the caller must raise the cap.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed persisted artifact (report / checkpoint file).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgonal
