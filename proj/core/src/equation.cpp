#include "fastdiff/equation.hpp"

#include <cmath>

namespace fastdiff {

double ProfileEquation::radial_accel(double r, double v, double dv) const {
  const double nm1 = n - 1.0;
  return (1.0 - m) * dv * dv / v - nm1 * dv / r -
         std::pow(v, 1.0 - m) * (alpha * v + beta * r * dv) / nm1;
}

double ProfileEquation::log_accel(double w, double ws) const {
  const double nm1 = n - 1.0;
  return (1.0 - 2.0 * m) / (1.0 - m) * ws * ws / w - b0() * ws - beta / nm1 * w * ws -
         rho1() / nm1 * w * w + a1() * w;
}

double ProfileEquation::residual(double r, double v, double dv, double d2v) const {
  const double nm1 = n - 1.0;
  return nm1 * (d2v - (1.0 - m) * dv * dv / v + nm1 * dv / r) +
         std::pow(v, 1.0 - m) * (alpha * v + beta * r * dv);
}

double ProfileEquation::origin_c2(double eta) const {
  return -alpha * std::pow(eta, 2.0 - m) / (2.0 * n * (n - 1.0));
}

}  // namespace fastdiff
