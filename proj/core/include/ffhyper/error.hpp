#pragma once

#include <stdexcept>
#include <string>

namespace ffhyper {

// Base of every error raised by the library. Callers that only need to
// distinguish "our" failures from std ones can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class NotOdd : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class SingularParameter : public Error {
 public:
  using Error::Error;
};

// A precondition on the arguments of a verification or evaluation was not met.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Requested computation exceeds the configured work budget.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// Rational reconstruction rejected a floating value; residual() is the
// offending distance (to the nearest integer, or the imaginary part).
class NotRational : public Error {
 public:
  NotRational(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace ffhyper
