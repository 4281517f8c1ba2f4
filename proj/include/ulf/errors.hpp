#pragma once

#include <stdexcept>
#include <string>

namespace ulf {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Construction of an element violated a representation invariant
/// (e.g. a zero leading digit together with a nonzero valuation claim).
struct NormalizationError : Error {
  using Error::Error;
};

/// An operation would need more significant digits than the inputs carry.
/// Thrown instead of silently returning an unreliable result.
struct PrecisionExhausted : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

/// Input outside the operation's domain (mismatched configs, non-square
/// matrices, out-of-range parameters, ...).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace ulf
