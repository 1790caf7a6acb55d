#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "fastdiff/errors.hpp"
#include "fastdiff/pde_verifier.hpp"

using namespace fastdiff;

namespace {
std::shared_ptr<const Solution> solve(const Parameters& p) {
  return std::make_shared<const Solution>(solve_profile(p));
}
}  // namespace

TEST(PdeVerifier, ScalingFunctions) {
  const auto sol = solve({3, 0.2, 2.5, 1, 1});
  const auto ss = build_selfsimilar(sol, Regime::Eternal);
  EXPECT_DOUBLE_EQ(ss.prefactor(1.0), std::exp(-2.5));
  EXPECT_DOUBLE_EQ(ss.scale(1.0), std::exp(-1.0));
  EXPECT_DOUBLE_EQ(ss.value(0.0, 0.3), std::exp(-0.75));

  const auto fwd = build_selfsimilar(solve({3, 0.2, 1.25, 1, 1}), Regime::Forward);
  EXPECT_FALSE(fwd.time_ok(0.0));
  EXPECT_DOUBLE_EQ(fwd.prefactor_rate(2.0), -1.25 / 2.0);

  const auto bwd = build_selfsimilar(solve({3, 0.2, 3.75, 1, 1}), Regime::Backward, 2.0);
  EXPECT_TRUE(bwd.time_ok(1.9));
  EXPECT_FALSE(bwd.time_ok(2.0));
  EXPECT_THROW(bwd.value(1.0, 2.5), OutOfRange);
}

TEST(PdeVerifier, RegimeChecks) {
  const auto sol = solve({3, 0.2, 2.5, 1, 1});
  EXPECT_THROW(build_selfsimilar(sol, Regime::Generic), RegimeMismatch);
  EXPECT_THROW(build_selfsimilar(sol, Regime::Forward), RegimeMismatch);
  EXPECT_NO_THROW(build_selfsimilar(sol, Regime::Forward, std::nullopt, false));
  const auto bwd = solve({3, 0.2, 3.75, 1, 1});
  EXPECT_THROW(build_selfsimilar(bwd, Regime::Backward), InvalidParameters);
}

TEST(PdeVerifier, SecondOrderResidual) {
  const auto ss = build_selfsimilar(solve({4, 0.3, 1.0 / 0.7, 1, 1}), Regime::Forward);
  const auto st = pde_residual(ss, {0.5, 1.0, 3.0}, {0.9, 1.1}, 1e-3, 1e-3);
  EXPECT_LT(st.max_rel_residual, 1e-5);
  EXPECT_NEAR(st.order_estimate, 2.0, 0.2);
  EXPECT_LT(st.chain_rule_mismatch, 1e-4);
}

TEST(PdeVerifier, OffRelationResidualIsLarge) {
  const auto good = build_selfsimilar(solve({3, 0.2, 2.5, 1, 1}), Regime::Eternal);
  const auto bad =
      build_selfsimilar(solve({3, 0.2, 2.525, 1, 1}), Regime::Eternal, std::nullopt, false);
  const std::vector<double> radii{0.5, 1, 2, 5}, times{-0.2, 0, 0.2};
  const auto a = pde_residual(good, radii, times, 1e-3, 1e-3);
  const auto b = pde_residual(bad, radii, times, 1e-3, 1e-3);
  EXPECT_GT(b.max_rel_residual, 100 * a.max_rel_residual);
}

TEST(PdeVerifier, StencilMustFit) {
  const auto ss = build_selfsimilar(solve({3, 0.2, 2.5, 1, 1}), Regime::Eternal);
  EXPECT_THROW(pde_residual(ss, {5e-4}, {0.0}, 1e-3, 1e-3), OutOfRange);
  EXPECT_THROW(pde_residual(ss, {1.0}, {0.0}, 0.0, 1e-3), InvalidParameters);
}
