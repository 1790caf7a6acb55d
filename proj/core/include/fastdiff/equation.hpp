#pragma once

#include <array>

#include "fastdiff/model.hpp"

namespace fastdiff {

// Radial profile equation in both charts. m = 0 is allowed and gives the
// log-diffusion profile equation, so the singular limit shares this code.
struct ProfileEquation {
  int n = 3;
  double m = 0.2;
  double alpha = 0.0;
  double beta = 1.0;

  static ProfileEquation from(const Parameters& p) { return {p.n, p.m, p.alpha, p.beta}; }

  double rho1() const { return alpha * (1.0 - m) - 2.0 * beta; }
  double b0() const { return (n - 2.0 - (n + 2.0) * m) / (1.0 - m); }
  double a1() const { return 2.0 * (n - 2.0 - n * m) / (1.0 - m); }

  // v'' from (r, v, v'), r > 0, v > 0.
  double radial_accel(double r, double v, double dv) const;
  std::array<double, 2> radial_rhs(double r, const std::array<double, 2>& y) const {
    return {y[1], radial_accel(r, y[0], y[1])};
  }

  // w_ss from (w, w_s) in s = log r, w = r^2 v^{1-m}. Autonomous.
  double log_accel(double w, double ws) const;
  std::array<double, 2> log_rhs(const std::array<double, 2>& y) const {
    return {y[1], log_accel(y[0], y[1])};
  }

  // Residual of ((n-1)/m) Delta v^m + alpha v + beta r v' divided by v^{m-1},
  // i.e. (n-1)(v'' - (1-m)v'^2/v + (n-1)v'/r) + v^{1-m}(alpha v + beta r v').
  double residual(double r, double v, double dv, double d2v) const;

  // Leading origin coefficient: v = eta + c2 r^2 + O(r^4).
  double origin_c2(double eta) const;
};

}  // namespace fastdiff
