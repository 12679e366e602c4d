#pragma once

#include <stdexcept>
#include <string>

namespace recexp {

enum class ErrorKind {
  ParameterDomain,     // bad distribution / function parameters
  Domain,              // evaluation point outside the admissible domain
  Ordering,            // u >= v or similar interval misuse
  DegenerateInterval,  // H(v) == H(u)
  Numerical,           // quadrature did not converge
  BudgetExhausted,     // naive record simulation ran out of draws
  Saturation,          // inverse hazard overflowed
  Configuration,
  InsufficientData,
  Data,
  Shape,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when adaptive quadrature stops short of its tolerance. Carries the
/// best value found and the error estimate that was actually reached.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double value, double achieved)
      : Error(ErrorKind::Numerical, what), value_(value), achieved_(achieved) {}

  double value() const noexcept { return value_; }
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double value_;
  double achieved_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace recexp
