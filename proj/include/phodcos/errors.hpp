#pragma once

#include <stdexcept>
#include <string>

namespace phodcos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Algebra
class DegenerateQuaternion : public Error {
 public:
  using Error::Error;
};

/// The target of a star-square equation points along -i (or vanishes); the
/// segment has to be re-split.
class DegenerateHodographDirection : public Error {
 public:
  using Error::Error;
};

// Curve evaluation
class VanishingPreimage : public Error {
 public:
  using Error::Error;
};

class SingularSpeed : public Error {
 public:
  using Error::Error;
};

// Interpolation
class DegenerateVelocitySum : public Error {
 public:
  using Error::Error;
};

class InterpolationResidual : public Error {
 public:
  using Error::Error;
};

// Pipeline
class ContinuityFailure : public Error {
 public:
  using Error::Error;
};

class ToleranceUnreachable : public Error {
 public:
  using Error::Error;
};

// Ingestion
class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

class NonMonotonicParameter : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  /// row is 1-based; 0 means the error is not tied to a row.
  ParseError(std::size_t row, const std::string& what)
      : Error(row == 0 ? what : "row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class EmptyFile : public Error {
 public:
  using Error::Error;
};

class SchemaVersionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace phodcos
