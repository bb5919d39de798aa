#pragma once

#include <stdexcept>
#include <string>

namespace zlab {

// Bad or inconsistent parameters supplied by the caller.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The operation only supports the structured box/ball families.
class UnsupportedShapeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Base for failures of a numerical procedure on valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : NumericalError(what), previous_(previous), last_(last) {}
  double previous() const { return previous_; }
  double last() const { return last_; }

 private:
  double previous_;
  double last_;
};

class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AliasingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace zlab
