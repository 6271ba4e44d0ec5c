#pragma once

#include <stdexcept>
#include <string>

namespace eitlab {

enum class ErrorKind {
  InvalidDimension,
  InvalidState,
  InvalidOperator,
  InvalidRate,
  DegenerateInput,
  SingularEvolution,
  Regime,
  Pole,
  Stencil,
  Numerical,
  Stiffness,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when a closed-form susceptibility hits a vanishing denominator.
class PoleError : public Error {
 public:
  PoleError(double delta, const std::string& what)
      : Error(ErrorKind::Pole, what + " (delta = " + std::to_string(delta) + ")"),
        delta_(delta) {}

  double delta() const noexcept { return delta_; }

 private:
  double delta_;
};

}  // namespace eitlab
