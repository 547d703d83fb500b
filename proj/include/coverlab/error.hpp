#pragma once

#include <stdexcept>
#include <string>

namespace coverlab {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Permutations or groups on different domains were combined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed text or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An enumeration cap was exceeded (raise it via COVERLAB_CAPS).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An argument violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A cover generator maps some fibre onto more than one fibre.
class FibrePreservationError : public Error {
 public:
  using Error::Error;
};

// The group induced on the base differs from the prescribed one.
class ImageMismatchError : public Error {
 public:
  using Error::Error;
};

// A lifted base-group element conjugates the kernel outside itself.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// A structural claim failed on a concrete instance. `witness` is a short
// machine-readable description of the counterexample.
class TheoremViolation : public Error {
 public:
  TheoremViolation(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// Internal consistency failure: signals a bug, never an input error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace coverlab
