#pragma once

#include "fastdiff/equation.hpp"
#include "fastdiff/model.hpp"

namespace fastdiff {

struct SeriesExpansion {
  double eta = 1.0;
  double c2 = 0.0;
  double r_switch = 1e-4;
  // Estimated |v - series| at r_switch, from the equation residual of the series.
  double truncation_estimate = 0.0;
};

SeriesExpansion expand_at_origin(const Parameters& p, double tol = 1e-10);
// Works for m = 0 as well, where c2 is the log-equation coefficient d2.
SeriesExpansion expand_at_origin(const ProfileEquation& eq, double eta, double tol = 1e-10);

struct PointValue {
  double v = 0.0;
  double dv = 0.0;
};

// Throws OutOfRange for r outside [0, r_switch].
PointValue eval_series(const SeriesExpansion& se, double r);

// Equation residual of the truncated series at r (normalised as ProfileEquation::residual).
double series_residual(const ProfileEquation& eq, const SeriesExpansion& se, double r);

}  // namespace fastdiff
