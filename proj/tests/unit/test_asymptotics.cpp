#include <gtest/gtest.h>

#include "fastdiff/asymptotics.hpp"
#include "fastdiff/errors.hpp"
#include "fastdiff/profile_integrator.hpp"

using namespace fastdiff;

TEST(Asymptotics, ExpectedConstantValues) {
  EXPECT_NEAR(expected_log_constant({3, 0.2, 2.5, 1, 1}), 2.0, 1e-14);
  EXPECT_NEAR(expected_log_constant({4, 1.0 / 3, 3, 1, 1}), 6.0, 1e-13);
  EXPECT_NEAR(expected_log_constant({5, 3.0 / 7, 3.5, 2, 1}), 6.0, 1e-13);
  EXPECT_NEAR(expected_log_constant({5, 0.5, 4, 1, 1}), 8.0, 1e-13);
}

TEST(Asymptotics, ExpectedConstantRefusals) {
  EXPECT_THROW(expected_log_constant({4, 0.5, 4, 1, 1}), EndpointRefused);
  EXPECT_THROW(expected_log_constant({4, 0.2, 4, -1, 1}), HypothesisViolation);
}

TEST(Asymptotics, LogDecayMatchesConstant) {
  const Solution sol = solve_profile({4, 1.0 / 3, 3, 1, 1});
  const auto d = estimate_log_decay(sol);
  EXPECT_EQ(d.kind, DecayKind::LogCorrected);
  ASSERT_TRUE(d.expected);
  EXPECT_LT(*d.rel_error_vs_expected, 0.01);
  EXPECT_TRUE(d.converged);
  EXPECT_FALSE(d.trace.empty());
  EXPECT_LT(std::fabs(d.raw_last / *d.expected - 1), 0.03);
}

TEST(Asymptotics, LogDecayRejectsPowerCase) {
  const Solution sol = solve_profile({3, 0.2, 1.25, 1, 1});
  EXPECT_THROW(estimate_log_decay(sol), HypothesisViolation);
}

TEST(Asymptotics, PowerDecayZeroAlphaIsEta) {
  const Solution sol = solve_profile({3, 0.2, 0.0, 1, 1.7});
  const auto d = estimate_power_decay(sol);
  EXPECT_EQ(d.extrapolated, 1.7);
}

TEST(Asymptotics, PowerDecayPlateaus) {
  for (double a : {1.25, 0.5, -1.0}) {
    const Solution sol = solve_profile({3, 0.2, a, 1, 1});
    const auto d = estimate_power_decay(sol);
    EXPECT_GT(d.extrapolated, 0.0);
    EXPECT_LT(d.last_decade_drift, 1e-3) << a;
    EXPECT_TRUE(d.proxy_decreasing) << a;
    EXPECT_TRUE(d.converged) << a;
    EXPECT_EQ(d.proxy.size(), 3u);
  }
}

TEST(Asymptotics, PowerDecayRejectsEternal) {
  const Solution sol = solve_profile({3, 0.2, 2.5, 1, 1});
  EXPECT_THROW(estimate_power_decay(sol), HypothesisViolation);
}
