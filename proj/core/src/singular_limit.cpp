#include "fastdiff/singular_limit.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "fastdiff/asymptotics.hpp"
#include "fastdiff/errors.hpp"
#include "fastdiff/profile_integrator.hpp"

namespace fastdiff {
namespace {

void check_limit_inputs(int n, double alpha, double beta, double eta) {
  if (n < 3) throw InvalidParameters("n must be >= 3");
  if (!(eta > 0.0)) throw InvalidParameters("eta must be positive");
  if (!(beta > 0.0 || alpha == 0.0)) throw HypothesisViolation("need beta > 0 or alpha = 0");
}

}  // namespace

Profile solve_log_equation(int n, double alpha, double beta, double eta, double r_max,
                           Tolerance tol) {
  check_limit_inputs(n, alpha, beta, eta);
  const ProfileEquation eq{n, 0.0, alpha, beta};
  const SeriesExpansion se = expand_at_origin(eq, eta, tol.rel);
  if (!(r_max > se.r_switch)) throw InvalidParameters("r_max must exceed the series radius");

  const double nm1 = n - 1.0;
  const double r0 = se.r_switch;
  // I(r0) from the series u = eta + d2 r^2.
  const double I0 = eta * std::pow(r0, n) / n + se.c2 * std::pow(r0, n + 2) / (n + 2.0);
  auto du = [&](double r, double u, double I) {
    return u / nm1 * (-beta * r * u + (n * beta - alpha) * I / std::pow(r, nm1));
  };
  auto rhs = [&](double r, const std::array<double, 2>& y) {
    return std::array<double, 2>{du(r, y[0], y[1]), std::pow(r, nm1) * y[0]};
  };
  std::vector<ProfileSample> samples{{0.0, eta, 0.0}};
  auto observe = [&](double r, const std::array<double, 2>& y, const std::array<double, 2>& d) {
    samples.push_back({r, y[0], d[0]});
  };
  auto admissible = [](const std::array<double, 2>& y) { return y[0] > kPositivityFloor; };
  StepperOptions opt;
  opt.tol = tol;
  const double u0 = eta + se.c2 * r0 * r0;
  const StepperStats st = dopri5_integrate<2>(rhs, r0, {u0, I0}, r_max, opt, admissible, observe);
  if (st.status == StepStatus::PositivityLoss) throw PositivityLoss(st.t_end);
  if (st.status != StepStatus::Reached) throw StepUnderflow(st.t_end);
  return Profile(eq, std::move(samples), tol.rel);
}

double log_equation_chart_agreement(const Profile& u, double r_h, Tolerance log_tol) {
  const LogSample start = handoff_to_log(u, r_h);
  const double s_max = std::log(u.r_end());
  const LogProfile log = integrate_log(u.equation(), start, s_max, log_tol);
  double worst = 0.0;
  for (const auto& x : log.samples()) {
    const double r = std::exp(x.s);
    if (r > u.r_end()) break;
    const double w = r * r * u.evaluate_exact(r).v;
    worst = std::max(worst, std::abs(w - x.w) / x.w);
  }
  return worst;
}

ConvergenceReport limit_convergence(int n, double alpha, double beta, double eta,
                                    const std::vector<double>& m_list, double r_max,
                                    Tolerance tol) {
  check_limit_inputs(n, alpha, beta, eta);
  if (m_list.empty()) throw InvalidParameters("m_list is empty");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (!(m_list[i] < m_list[i - 1])) throw InvalidParameters("m_list must be decreasing");
  for (double m : m_list) {
    const Parameters p{n, m, alpha, beta, eta};
    validate(p);
    if (!check_hypotheses(p).existence_ok)
      throw HypothesisViolation("existence range violated at m = " + std::to_string(m));
  }

  const Profile u = solve_log_equation(n, alpha, beta, eta, r_max, tol);
  constexpr int kGrid = 2001;

  struct Sup {
    double err = 0.0;
    double at = 0.0;
  };
  auto one = [&](double m) {
    const ProfileEquation eq{n, m, alpha, beta};
    const SeriesExpansion se = expand_at_origin(eq, eta, tol.rel);
    const Profile v = integrate_r(eq, se, r_max, tol);
    Sup s;
    for (int i = 0; i < kGrid; ++i) {
      const double r = r_max * i / (kGrid - 1);
      const double d = std::abs(v.evaluate(r).v - u.evaluate(r).v);
      if (d > s.err) s = {d, r};
    }
    return s;
  };
  std::vector<std::future<Sup>> jobs;
  for (double m : m_list) jobs.push_back(std::async(std::launch::async, one, m));

  ConvergenceReport rep;
  rep.m_values = m_list;
  rep.r_max = r_max;
  for (auto& j : jobs) {
    const Sup s = j.get();
    rep.sup_errors.push_back(s.err);
    rep.argmax.push_back(s.at);
  }
  rep.monotone = rep.strictly_decreasing = true;
  for (std::size_t i = 1; i < rep.sup_errors.size(); ++i) {
    rep.monotone = rep.monotone && rep.sup_errors[i] <= 1.05 * rep.sup_errors[i - 1];
    rep.strictly_decreasing = rep.strictly_decreasing && rep.sup_errors[i] < rep.sup_errors[i - 1];
  }
  rep.final_error = rep.sup_errors.back();
  return rep;
}

namespace {

// Value at x = 0 of the least-squares quadratic through (x_i, y_i).
double quadratic_intercept(const std::vector<double>& x, const std::vector<double>& y) {
  double S[5] = {0, 0, 0, 0, 0}, T[3] = {0, 0, 0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double xp = 1.0;
    for (int k = 0; k < 5; ++k) {
      S[k] += xp;
      if (k < 3) T[k] += xp * y[i];
      xp *= x[i];
    }
  }
  // Normal equations [S0 S1 S2; S1 S2 S3; S2 S3 S4] c = T, solved by Cramer's rule for c0.
  auto det3 = [](double a, double b, double c, double d, double e, double f, double g, double h,
                 double k) { return a * (e * k - f * h) - b * (d * k - f * g) + c * (d * h - e * g); };
  const double D = det3(S[0], S[1], S[2], S[1], S[2], S[3], S[2], S[3], S[4]);
  const double D0 = det3(T[0], S[1], S[2], T[1], S[2], S[3], T[2], S[3], S[4]);
  return D0 / D;
}

}  // namespace

DoubleLimitReport double_limit(int n, double beta, double eta, const std::vector<double>& m_list,
                               double s_end) {
  if (!(beta > 0.0)) throw HypothesisViolation("double limit needs beta > 0");
  if (m_list.size() < 3) throw InvalidParameters("double limit needs at least three m values");
  DoubleLimitReport rep;
  rep.n = n;
  rep.beta = beta;
  rep.m_values = m_list;
  rep.expected = 2.0 * (n - 1.0) * (n - 2.0) / beta;

  auto one = [&](double m) {
    const Parameters p{n, m, eternal_alpha(m, beta), beta, eta};
    SolveConfig cfg;
    cfg.s_end = s_end;
    const Solution sol = solve_profile(p, cfg);
    return estimate_log_decay(sol);
  };
  std::vector<std::future<DecayEstimate>> jobs;
  for (double m : m_list) jobs.push_back(std::async(std::launch::async, one, m));
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    const DecayEstimate e = jobs[i].get();
    rep.a0_measured.push_back(e.extrapolated);
    rep.a0_exact.push_back(*e.expected);
  }
  rep.a0_trend_at_zero = quadratic_intercept(m_list, rep.a0_measured);

  const double alpha = 2.0 * beta;
  const Profile u = solve_log_equation(n, alpha, beta, eta, 2.0, kRChartTol);
  const LogSample start = handoff_to_log(u, 1.0);
  const LogProfile log = integrate_log(u.equation(), start, s_end, kSChartTol);
  const DecayEstimate e = estimate_log_decay(log, rep.expected);
  rep.log_equation_limit = e.extrapolated;
  rep.log_equation_raw = e.alt_last;
  rep.chart_agreement = log_equation_chart_agreement(u, 1.0, kSChartTol);
  for (double a : rep.a0_measured) rep.gaps.push_back(std::abs(a - rep.log_equation_limit));
  return rep;
}

}  // namespace fastdiff
