#include "fastdiff/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fastdiff/errors.hpp"

namespace fastdiff {

double m_endpoint(int n) { return static_cast<double>(n - 2) / n; }
double yamabe_exponent(int n) { return static_cast<double>(n - 2) / (n + 2); }
double eternal_alpha(double m, double beta) { return 2.0 * beta / (1.0 - m); }

bool at_m_endpoint(const Parameters& p) {
  return std::abs(p.m - m_endpoint(p.n)) <= 1e-12 * m_endpoint(p.n);
}

void validate(const Parameters& p) {
  if (p.n < 3) throw InvalidParameters("n must be >= 3, got " + std::to_string(p.n));
  if (!std::isfinite(p.m) || !std::isfinite(p.alpha) || !std::isfinite(p.beta) ||
      !std::isfinite(p.eta))
    throw InvalidParameters("parameters must be finite");
  if (!(p.m > 0.0) || (p.m > m_endpoint(p.n) && !at_m_endpoint(p)))
    throw InvalidParameters("m must lie in (0, (n-2)/n], got " + std::to_string(p.m));
  if (!(p.eta > 0.0)) throw InvalidParameters("eta must be positive");
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Forward: return "forward";
    case Regime::Backward: return "backward";
    case Regime::Eternal: return "eternal";
    case Regime::Generic: return "generic";
  }
  return "generic";
}

std::optional<Regime> parse_regime(std::string_view s) {
  for (Regime r : {Regime::Forward, Regime::Backward, Regime::Eternal, Regime::Generic})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

namespace {

double regime_scale(const Parameters& p) {
  return std::max({1.0, std::abs(p.alpha * (1.0 - p.m)), std::abs(2.0 * p.beta)});
}

}  // namespace

Regime classify_regime(const Parameters& p, double tol) {
  const double rho1 = p.alpha * (1.0 - p.m) - 2.0 * p.beta;
  const double bound = tol * regime_scale(p);
  struct Candidate {
    Regime regime;
    double residual;
  };
  const Candidate cands[] = {{Regime::Eternal, std::abs(rho1)},
                             {Regime::Forward, std::abs(rho1 + 1.0)},
                             {Regime::Backward, std::abs(rho1 - 1.0)}};
  Regime best = Regime::Generic;
  double best_res = std::numeric_limits<double>::infinity();
  bool tie = false;
  for (const auto& c : cands) {
    if (c.residual > bound) continue;
    if (c.residual < best_res) {
      best = c.regime;
      best_res = c.residual;
      tie = false;
    } else if (c.residual == best_res) {
      tie = true;
    }
  }
  return tie ? Regime::Generic : best;
}

HypothesisReport check_hypotheses(const Parameters& p, double tol) {
  HypothesisReport h;
  const double nm2 = static_cast<double>(p.n - 2);
  h.existence_ok = p.beta > 0.0 && p.alpha <= p.beta * nm2 / p.m;
  h.strict_m = p.m < m_endpoint(p.n) && !at_m_endpoint(p);
  const double ae = eternal_alpha(p.m, p.beta);
  h.log_decay_ok = classify_regime(p, tol) == Regime::Eternal && p.alpha > 0.0;
  h.power_decay_ok = ae > std::max(p.alpha, 0.0);
  h.limit_ok = p.beta > 0.0 || p.alpha == 0.0;
  return h;
}

DerivedConstants derived(const Parameters& p) {
  DerivedConstants d;
  const double n = p.n, m = p.m, beta = p.beta;
  const double om = 1.0 - m;
  const double core = at_m_endpoint(p) ? 0.0 : n - 2.0 - n * m;
  if (p.alpha != 0.0) d.k = beta / p.alpha;
  d.rho1 = p.alpha * om - 2.0 * beta;
  d.a0 = 2.0 * core * (n - 1.0) / (om * beta);
  d.b0 = (n - 2.0 - (n + 2.0) * m) / om;
  d.b1 = 2.0 * m * core / (om * om);
  d.b2 = std::max(3.0 * m / om, std::sqrt(d.b1 + d.b0 * d.b0) + std::abs(d.b0));
  return d;
}

}  // namespace fastdiff
