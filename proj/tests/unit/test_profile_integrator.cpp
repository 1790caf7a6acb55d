#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fastdiff/errors.hpp"
#include "fastdiff/profile_integrator.hpp"

using namespace fastdiff;

TEST(ProfileIntegrator, EternalProfileBasics) {
  const Parameters p{3, 0.2, 2.5, 1, 1};
  const Solution sol = solve_profile(p);
  const auto& s = sol.profile().samples();
  ASSERT_GT(s.size(), 10u);
  EXPECT_EQ(s.front().r, 0.0);
  EXPECT_EQ(s.front().v, 1.0);
  EXPECT_GE(sol.profile().r_end(), 10.0);
  EXPECT_NEAR(sol.logprofile().s_end(), 40.0, 1e-12);
  EXPECT_LT(sol.overlap_error(), sol.diagnostics().at("overlap_threshold"));
  for (std::size_t i = 1; i < s.size(); ++i) {
    EXPECT_GT(s[i].r, s[i - 1].r);
    EXPECT_LT(s[i].v, s[i - 1].v);
    EXPECT_GT(s[i].v, 0.0);
  }
}

TEST(ProfileIntegrator, ResidualAtKnots) {
  const Parameters p{4, 0.25, 1.0, 1, 2};
  const Solution sol = solve_profile(p);
  const auto& prof = sol.profile();
  const ProfileEquation& eq = prof.equation();
  for (std::size_t i = 1; i < prof.samples().size(); i += 7) {
    const auto& k = prof.samples()[i];
    const double res = eq.residual(k.r, k.v, k.dv, prof.curvature(i));
    EXPECT_LT(std::fabs(res), 1e-9 * std::max(1.0, std::fabs(eq.alpha))) << k.r;
  }
}

// Radial and log forms of the right-hand side agree under the change of variables.
TEST(ProfileIntegrator, ChartRhsConsistency) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(U(rng) * 4);
    const double m = 0.02 + U(rng) * (m_endpoint(n) - 0.04);
    const ProfileEquation eq{n, m, -2 + 6 * U(rng), 0.2 + 2 * U(rng)};
    const double r = 0.05 + 20 * U(rng), v = 0.01 + U(rng), dv = -U(rng);
    const auto ls = LogProfile::from_radial(m, {r, v, dv});
    const double ws_dot = eq.log_accel(ls.w, ls.ws);
    // w_s = w (2 + (1-m) r v'/v); differentiate in s = log r via the radial equation.
    const double d2v = eq.radial_accel(r, v, dv);
    const double g = 2 + (1 - m) * r * dv / v;
    const double dg = (1 - m) * r * (dv / v + r * d2v / v - r * dv * dv / (v * v));
    const double expect = ls.ws * g + ls.w * dg;
    EXPECT_NEAR(ws_dot, expect, 1e-9 * std::max(1.0, std::fabs(expect)));
    const auto back = LogProfile::to_radial(m, ls);
    EXPECT_NEAR(back.v, v, 1e-13 * v);
    EXPECT_NEAR(back.dv, dv, 1e-11 * std::max(1.0, std::fabs(dv)));
  }
}

TEST(ProfileIntegrator, EvaluateAgreesWithExact) {
  const Solution sol = solve_profile({3, 0.2, 1.25, 1, 1});
  for (double r : {1e-5, 0.3, 1.7, 9.0, 50.0, 1e3}) {
    const auto a = sol.evaluate(r), b = sol.evaluate_exact(r);
    EXPECT_NEAR(a.v, b.v, 1e-7 * b.v) << r;
  }
  EXPECT_THROW(sol.evaluate(2 * sol.r_max()), OutOfRange);
}

TEST(ProfileIntegrator, RefusesOutsideExistenceRange) {
  EXPECT_THROW(solve_profile({3, 0.2, 6.0, 1, 1}), HypothesisViolation);
  EXPECT_THROW(solve_profile({3, 0.2, 1.0, -1, 1}), HypothesisViolation);
  SolveConfig cfg;
  cfg.override_hypotheses = true;
  cfg.r_max = 2;
  cfg.s_end = 3;
  // beyond the bound the profile may still exist for a while; must not be refused
  try {
    solve_profile({3, 0.2, 6.0, 1, 1}, cfg);
  } catch (const HypothesisViolation&) {
    FAIL() << "override ignored";
  } catch (const NumericalFailure&) {
  }
}

TEST(ProfileIntegrator, NegativeBetaOverrideLosesPositivityOrSucceeds) {
  SolveConfig cfg;
  cfg.override_hypotheses = true;
  cfg.s_end = 20;
  try {
    const Solution sol = solve_profile({3, 0.2, 3, -1, 1}, cfg);
    for (const auto& k : sol.profile().samples()) EXPECT_GT(k.v, 0.0);
  } catch (const PositivityLoss& e) {
    EXPECT_GT(e.radius(), 0.0);
  } catch (const StepUnderflow& e) {
    EXPECT_GT(e.radius(), 0.0);
  }
}

TEST(ProfileIntegrator, StiffPowerTailEndsOnQuarterDecade) {
  const Solution sol = solve_profile({3, 0.2, 1.25, 1, 1});
  const double s = sol.logprofile().s_end();
  const double j = 4 * s / std::log(10.0);
  EXPECT_NEAR(j, std::round(j), 1e-9);
  EXPECT_EQ(sol.diagnostics().at("stiffness_limited"), 1.0);
}

TEST(ProfileIntegrator, Deterministic) {
  const Parameters p{5, 0.3, 1.0, 0.5, 1.5};
  const Solution a = solve_profile(p), b = solve_profile(p);
  ASSERT_EQ(a.logprofile().samples().size(), b.logprofile().samples().size());
  EXPECT_EQ(a.logprofile().samples().back().w, b.logprofile().samples().back().w);
  EXPECT_EQ(a.overlap_error(), b.overlap_error());
}

TEST(ProfileIntegrator, EndpointExponentSolves) {
  const Solution sol = solve_profile({4, 0.5, 1.0, 1, 1});
  EXPECT_LT(sol.overlap_error(), sol.diagnostics().at("overlap_threshold"));
}
