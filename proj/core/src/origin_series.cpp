#include "fastdiff/origin_series.hpp"

#include <algorithm>
#include <cmath>

#include "fastdiff/errors.hpp"

namespace fastdiff {
namespace {

// The r^4 term contributes 4(n-1)(n+2) c4 r^2 to the residual, so the
// residual R of the truncated series gives |c4 r^4| ~ |R| r^2 / (4(n-1)(n+2)).
double truncation_at(const ProfileEquation& eq, const SeriesExpansion& se, double r) {
  const double R = series_residual(eq, se, r);
  return std::abs(R) * r * r / (4.0 * (eq.n - 1.0) * (eq.n + 2.0));
}

}  // namespace

SeriesExpansion expand_at_origin(const Parameters& p, double tol) {
  validate(p);
  return expand_at_origin(ProfileEquation::from(p), p.eta, tol);
}

SeriesExpansion expand_at_origin(const ProfileEquation& eq, double eta, double tol) {
  if (!(eta > 0.0)) throw InvalidParameters("eta must be positive");
  SeriesExpansion se;
  se.eta = eta;
  se.c2 = eq.origin_c2(eta);
  se.r_switch = se.c2 == 0.0 ? 1e-4 : 1e-4 * std::max(1.0, 1.0 / std::sqrt(std::abs(se.c2)));
  se.truncation_estimate = truncation_at(eq, se, se.r_switch);
  for (int i = 0; i < 60 && se.truncation_estimate > tol * eta; ++i) {
    se.r_switch *= 0.5;
    se.truncation_estimate = truncation_at(eq, se, se.r_switch);
  }
  return se;
}

PointValue eval_series(const SeriesExpansion& se, double r) {
  if (!(r >= 0.0) || r > se.r_switch)
    throw OutOfRange("series evaluated outside [0, r_switch]");
  return {se.eta + se.c2 * r * r, 2.0 * se.c2 * r};
}

double series_residual(const ProfileEquation& eq, const SeriesExpansion& se, double r) {
  return eq.residual(r, se.eta + se.c2 * r * r, 2.0 * se.c2 * r, 2.0 * se.c2);
}

}  // namespace fastdiff
