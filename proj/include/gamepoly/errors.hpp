#pragma once

#include <stdexcept>
#include <string>

namespace gamepoly {

// Raised when an input sits on a probability-zero configuration that the
// floating-point solvers cannot resolve (zero polynomial, singular system).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root refinement gave up; carries the interval that failed to shrink.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

// A campaign flagged more degenerate draws than its configured budget.
class DegenerateRateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature ran out of budget with the error estimate above tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double value, double error)
      : std::runtime_error(what), value_(value), error_(error) {}
  double value() const { return value_; }
  double error() const { return error_; }

 private:
  double value_;
  double error_;
};

}  // namespace gamepoly
