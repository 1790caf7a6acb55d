#pragma once

#include <functional>
#include <vector>

namespace fastdiff {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  // integral of |f|
};

// Integrates f over [a, b], splitting at the given breakpoints (typically
// solution knots, where the dense interpolant is only C1). With
// singular_at_a the first piece uses tanh-sinh to absorb an integrable
// endpoint singularity. Throws QuadratureFailure when the accumulated error
// estimate exceeds rel_tol * l1.
QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     const std::vector<double>& breakpoints, double a, double b,
                                     double rel_tol, bool singular_at_a = false);

}  // namespace fastdiff
