#pragma once

#include <vector>

#include "fastdiff/dopri5.hpp"
#include "fastdiff/profile.hpp"

namespace fastdiff {

// Radial profile of (n-1) Delta log u + alpha u + beta x.grad u = 0, u(0) = eta,
// from the integrated (flux) form with I(r) = int_0^r rho^{n-1} u.
Profile solve_log_equation(int n, double alpha, double beta, double eta, double r_max,
                           Tolerance tol = {1e-10, 1e-12});

// Relative w-difference between the direct solution and the m = 0 log chart
// started from it at r_h, at log-chart knots in [r_h, r_max].
double log_equation_chart_agreement(const Profile& u, double r_h, Tolerance log_tol);

inline const std::vector<double> kDefaultLimitMs{0.2, 0.1, 0.05, 0.02, 0.01};

struct ConvergenceReport {
  std::vector<double> m_values;
  std::vector<double> sup_errors;  // sup over [0, r_max] of |v^(m) - u|
  std::vector<double> argmax;      // radius attaining each sup
  double r_max = 0.0;
  bool monotone = false;             // nonincreasing within 5% slack
  bool strictly_decreasing = false;  // no slack
  double final_error = 0.0;
};

ConvergenceReport limit_convergence(int n, double alpha, double beta, double eta,
                                    const std::vector<double>& m_list, double r_max,
                                    Tolerance tol = {1e-10, 1e-12});

struct DoubleLimitReport {
  int n = 3;
  double beta = 1.0;
  std::vector<double> m_values;
  std::vector<double> a0_measured;  // extrapolated w_s limit at alpha = 2beta/(1-m)
  std::vector<double> a0_exact;     // closed form at each m
  std::vector<double> gaps;         // |a0_measured(m) - log_equation_limit|
  double a0_trend_at_zero = 0.0;    // quadratic least-squares extrapolation of a0_measured to m = 0
  double log_equation_limit = 0.0;  // extrapolated r^2 u / log r limit, alpha = 2beta, m = 0
  double log_equation_raw = 0.0;    // r^2 u / log r at s_end
  double chart_agreement = 0.0;     // direct path vs integrate_log(m = 0)
  double expected = 0.0;            // 2(n-1)(n-2)/beta
};

DoubleLimitReport double_limit(int n, double beta, double eta,
                               const std::vector<double>& m_list = kDefaultLimitMs,
                               double s_end = 40.0);

}  // namespace fastdiff
