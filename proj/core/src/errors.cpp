#include "fastdiff/errors.hpp"

#include <cstdio>

namespace fastdiff {
namespace {

std::string at_radius(const char* what, double r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s at r = %.6g", what, r);
  return buf;
}

}  // namespace

NumericalFailure::NumericalFailure(const std::string& what, double radius)
    : Error(what), radius_(radius) {}

PositivityLoss::PositivityLoss(double radius)
    : NumericalFailure(at_radius("positivity lost", radius), radius) {}

StepUnderflow::StepUnderflow(double radius)
    : NumericalFailure(at_radius("step size underflow", radius), radius) {}

QuadratureFailure::QuadratureFailure(double radius, double error_estimate)
    : NumericalFailure(at_radius(("quadrature did not converge (error estimate " +
                                  std::to_string(error_estimate) + ")")
                                     .c_str(),
                                 radius),
                       radius) {}

}  // namespace fastdiff
