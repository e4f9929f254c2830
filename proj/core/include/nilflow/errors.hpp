#pragma once

#include <stdexcept>
#include <string>

namespace nilflow {

/// Base class for every failure raised by a numerical operation. The CLI maps
/// these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sphere point came within the pole margin of the polar chart.
class PoleProximity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A product state is off the zero level of the anti-diagonal momentum map.
class NotHorizontal : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Argument outside the domain of a formula (e.g. r outside (0, pi)).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NewtonDivergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Finite-difference stencil would touch a pole or the c = 0 hyperplane.
class SingularProximity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotOnRegularFiber : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Wraps a step failure with the integration time at which it happened.
class IntegrationFailure : public NumericalError {
 public:
  IntegrationFailure(double time, const std::string& what)
      : NumericalError("integration failed at t=" + std::to_string(time) + ": " + what),
        time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace nilflow
