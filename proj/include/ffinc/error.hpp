#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffinc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested enumeration or search is larger than the desk-scale limit.
class ScaleGuardError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  DivisionByZeroError() : Error("division by zero in prime field") {}
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Characteristic 2 is not supported by quadratic-form operations.
class UnsupportedCharacteristicError : public Error {
 public:
  using Error::Error;
};

/// A randomized builder exhausted its retry budget.
class RetryExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or serialized input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Upper limit on the number of grid points an exhaustive scan may touch.
/// Defaults to 10^6 and can be overridden through FFINC_MAX_GRID.
std::uint64_t max_grid();

/// Throws ScaleGuardError when p^d exceeds max_grid().
void check_grid(std::uint64_t p, std::size_t d, const std::string& what);

/// p^d, saturating at UINT64_MAX.
std::uint64_t checked_pow(std::uint64_t p, std::size_t d);

}  // namespace ffinc
