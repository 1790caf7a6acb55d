#include <gtest/gtest.h>

#include <cmath>

#include "fastdiff/dopri5.hpp"

using namespace fastdiff;

namespace {
auto always = [](const std::array<double, 2>&) { return true; };
auto ignore = [](double, const std::array<double, 2>&, const std::array<double, 2>&) {};
auto oscillator = [](double, const std::array<double, 2>& y) {
  return std::array<double, 2>{y[1], -y[0]};
};
}  // namespace

TEST(Dopri5, OscillatorAccuracy) {
  std::array<double, 2> y{1.0, 0.0};
  StepperOptions opt;
  opt.tol = {1e-11, 1e-13};
  double t_last = 0;
  std::array<double, 2> y_last{};
  const auto st = dopri5_integrate<2>(oscillator, 0.0, y, 10.0, opt, always,
                                      [&](double t, const auto& yy, const auto&) {
                                        t_last = t;
                                        y_last = yy;
                                      });
  EXPECT_EQ(st.status, StepStatus::Reached);
  EXPECT_DOUBLE_EQ(t_last, 10.0);
  EXPECT_NEAR(y_last[0], std::cos(10.0), 1e-9);
  EXPECT_NEAR(y_last[1], -std::sin(10.0), 1e-9);
}

TEST(Dopri5, TighterToleranceMoreSteps) {
  StepperOptions a, b;
  a.tol = {1e-6, 1e-8};
  b.tol = {1e-10, 1e-12};
  const auto sa = dopri5_integrate<2>(oscillator, 0.0, {1.0, 0.0}, 5.0, a, always, ignore);
  const auto sb = dopri5_integrate<2>(oscillator, 0.0, {1.0, 0.0}, 5.0, b, always, ignore);
  // Fifth order: a factor 1e4 in tolerance costs about 10^(4/5) ~ 6x in steps.
  EXPECT_GT(sb.accepted, 3 * sa.accepted);
  EXPECT_LT(sb.accepted, 12 * sa.accepted);
}

TEST(Dopri5, StopsOnInadmissibleState) {
  // y' = -1 crosses zero at t = 1.
  auto f = [](double, const std::array<double, 2>&) { return std::array<double, 2>{-1.0, 0.0}; };
  auto positive = [](const std::array<double, 2>& y) { return y[0] > 0.0; };
  StepperOptions opt;
  const auto st = dopri5_integrate<2>(f, 0.0, {1.0, 0.0}, 2.0, opt, positive, ignore);
  EXPECT_NE(st.status, StepStatus::Reached);
  EXPECT_LE(st.t_end, 1.0);
}

TEST(Dopri5, BudgetExhausted) {
  StepperOptions opt;
  opt.max_steps = 5;
  const auto st = dopri5_integrate<2>(oscillator, 0.0, {1.0, 0.0}, 100.0, opt, always, ignore);
  EXPECT_EQ(st.status, StepStatus::BudgetExhausted);
  EXPECT_EQ(st.accepted, 5u);
}

TEST(Dopri5, FixedStepIsFifthOrder) {
  const double exact = std::cos(2.0);
  const double e1 = std::fabs(dopri5_fixed<2>(oscillator, 0.0, {1.0, 0.0}, 2.0, 40)[0] - exact);
  const double e2 = std::fabs(dopri5_fixed<2>(oscillator, 0.0, {1.0, 0.0}, 2.0, 80)[0] - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 5.0, 0.3);
}
