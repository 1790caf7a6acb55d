#pragma once

#include <stdexcept>
#include <string>

namespace fastdiff {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

// m = (n-2)/n: solvable, but the decay estimators need m strictly below it.
class EndpointRefused : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

class RegimeMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double radius);
  // Radius where integration stopped (r, not s, for log-chart failures).
  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

class PositivityLoss : public NumericalFailure {
 public:
  explicit PositivityLoss(double radius);
};

class StepUnderflow : public NumericalFailure {
 public:
  explicit StepUnderflow(double radius);
};

class QuadratureFailure : public NumericalFailure {
 public:
  QuadratureFailure(double radius, double error_estimate);
};

}  // namespace fastdiff
