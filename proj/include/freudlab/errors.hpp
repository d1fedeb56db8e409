#pragma once

#include <stdexcept>
#include <string>

namespace freudlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the given weight family, map or catalog entry.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Working precision too small for the requested result; retry with more digits.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// adaptive_eval did not stabilise within its doubling budget.
class ConvergenceError : public PrecisionExhausted {
 public:
  using PrecisionExhausted::PrecisionExhausted;
};

/// A step of a discrete map hit a zero pivot.
class SingularityError : public Error {
 public:
  SingularityError(long index, const std::string& what)
      : Error(what + " at n = " + std::to_string(index)), index_(index) {}

  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// Trace values that do not correspond to a positive measure.
class ReconstructionError : public Error {
 public:
  ReconstructionError(long index, const std::string& what)
      : Error(what + " at n = " + std::to_string(index)), index_(index) {}

  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// A truncated Laurent series lost all known coefficients.
class TruncationInsufficient : public Error {
 public:
  using Error::Error;
};

}  // namespace freudlab
