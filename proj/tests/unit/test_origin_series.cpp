#include <gtest/gtest.h>

#include <cmath>

#include "fastdiff/errors.hpp"
#include "fastdiff/origin_series.hpp"
#include "support/oracles.hpp"

using namespace fastdiff;

namespace {

struct Case {
  int n;
  double m, alpha, beta, eta;
  double frozen_c2;  // from oracle::origin_c2
};

// Frozen from the flux-form RK4 oracle (accurate to ~1e-8 relative).
const Case kCases[] = {
    {3, 0.2, 2.5, 1, 1, -0.20833333314788},
    {4, 1.0 / 3, 3, 1, 1, -0.12499999973098691},
    {5, 3.0 / 7, 7, 2, 1, -0.17499999976970967},
    {3, 0.2, -1, 1, 2, 0.29018352062335245},
    {3, 0.0, 1, 1, 1, -0.083333333037264687},
    {4, 0.0, 2, 1, 0.5, -0.020833333199425035},
};

}  // namespace

TEST(OriginSeries, MatchesFrozenOracle) {
  for (const auto& c : kCases) {
    const ProfileEquation eq{c.n, c.m, c.alpha, c.beta};
    const auto se = expand_at_origin(eq, c.eta);
    EXPECT_NEAR(se.c2 / c.frozen_c2, 1.0, 1e-6) << c.n << ' ' << c.m << ' ' << c.alpha;
  }
}

TEST(OriginSeries, MatchesLiveOracle) {
  const Case& c = kCases[1];
  const double o = oracle::origin_c2(c.n, c.m, c.alpha, c.beta, c.eta);
  EXPECT_NEAR(o, c.frozen_c2, 1e-14);
}

TEST(OriginSeries, SwitchRadiusAndEstimate) {
  const Parameters p{3, 0.2, 2.5, 1, 1};
  const auto se = expand_at_origin(p, 1e-10);
  EXPECT_GT(se.r_switch, 0.0);
  EXPECT_LE(se.r_switch, 1e-4 * std::max(1.0, 1.0 / std::sqrt(std::fabs(se.c2))));
  EXPECT_LE(se.truncation_estimate, 1e-10 * p.eta);
}

TEST(OriginSeries, EvaluationAndRange) {
  const auto se = expand_at_origin(Parameters{3, 0.2, 2.5, 1, 1});
  const auto at0 = eval_series(se, 0.0);
  EXPECT_EQ(at0.v, 1.0);
  EXPECT_EQ(at0.dv, 0.0);
  const double r = se.r_switch / 2;
  const auto pv = eval_series(se, r);
  EXPECT_DOUBLE_EQ(pv.v, 1.0 + se.c2 * r * r);
  EXPECT_DOUBLE_EQ(pv.dv, 2 * se.c2 * r);
  EXPECT_THROW(eval_series(se, 2 * se.r_switch), OutOfRange);
  EXPECT_THROW(eval_series(se, -1e-9), OutOfRange);
}

// The truncated series solves the equation up to O(r^2) in the residual.
TEST(OriginSeries, ResidualShrinksQuadratically) {
  const ProfileEquation eq{4, 0.25, 1.5, 1};
  const auto se = expand_at_origin(eq, 1.3);
  const double r1 = se.r_switch, r2 = se.r_switch / 2;
  const double q = std::fabs(series_residual(eq, se, r1) / series_residual(eq, se, r2));
  EXPECT_NEAR(q, 4.0, 0.1);
}
