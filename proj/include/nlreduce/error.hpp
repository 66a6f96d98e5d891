#pragma once

#include <stdexcept>
#include <string>

namespace nlreduce {

/// Base class for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSPD : public Error {
 public:
  using Error::Error;
};

class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

class DegenerateCurvature : public Error {
 public:
  using Error::Error;
};

/// An iterative method ran out of iterations. Carries the best residual reached.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

class LineSearchFailure : public Error {
 public:
  LineSearchFailure(const std::string& what, double last_value, int trials)
      : Error(what), last_value_(last_value), trials_(trials) {}

  double last_value() const { return last_value_; }
  int trials() const { return trials_; }

 private:
  double last_value_;
  int trials_;
};

}  // namespace nlreduce
