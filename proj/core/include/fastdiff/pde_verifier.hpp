#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fastdiff/model.hpp"
#include "fastdiff/profile_integrator.hpp"

namespace fastdiff {

// u(r, t) = P(t) v(r S(t)):
//   Forward   P = t^{-alpha},     S = t^{-beta}        (t > 0)
//   Backward  P = (T-t)^{alpha},  S = (T-t)^{beta}     (t < T)
//   Eternal   P = e^{-alpha t},   S = e^{-beta t}
class SelfSimilarSolution {
 public:
  SelfSimilarSolution(std::shared_ptr<const Solution> sol, Regime regime, double T);

  Regime regime() const { return regime_; }
  double horizon() const { return T_; }
  const Solution& solution() const { return *sol_; }

  bool time_ok(double t) const;
  double prefactor(double t) const;
  double scale(double t) const;
  double prefactor_rate(double t) const;  // P'/P
  double scale_rate(double t) const;      // S'/S

  double value(double r, double t) const;
  // Chain rule: P' v + P v'(y) r S'.
  double time_derivative(double r, double t) const;

 private:
  void require_time(double t) const;

  std::shared_ptr<const Solution> sol_;
  Regime regime_;
  double T_;
  double alpha_, beta_;
};

// Throws RegimeMismatch unless the parameters satisfy the regime's exponent
// relation (skipped with enforce_relation = false, for sensitivity checks).
SelfSimilarSolution build_selfsimilar(std::shared_ptr<const Solution> sol, Regime regime,
                                      std::optional<double> T = std::nullopt,
                                      bool enforce_relation = true);

struct ResidualStats {
  std::vector<double> radii;
  std::vector<double> times;
  double h = 0.0;
  double dt = 0.0;
  double max_rel_residual = 0.0;       // at (h, dt)
  double max_rel_residual_half = 0.0;  // at (h/2, dt/2)
  double order_estimate = 0.0;         // log2 of the ratio
  double chain_rule_mismatch = 0.0;    // max relative |u_t(FD) - u_t(chain rule)|
  double worst_r = 0.0;
  double worst_t = 0.0;
};

ResidualStats pde_residual(const SelfSimilarSolution& ss, const std::vector<double>& radii,
                           const std::vector<double>& times, double h, double dt);

}  // namespace fastdiff
