#include "fastdiff/pde_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fastdiff/errors.hpp"

namespace fastdiff {

SelfSimilarSolution::SelfSimilarSolution(std::shared_ptr<const Solution> sol, Regime regime,
                                         double T)
    : sol_(std::move(sol)),
      regime_(regime),
      T_(T),
      alpha_(sol_->params().alpha),
      beta_(sol_->params().beta) {}

bool SelfSimilarSolution::time_ok(double t) const {
  switch (regime_) {
    case Regime::Forward: return t > 0.0;
    case Regime::Backward: return t < T_;
    default: return std::isfinite(t);
  }
}

void SelfSimilarSolution::require_time(double t) const {
  if (!time_ok(t)) throw OutOfRange("time outside the self-similar solution's domain");
}

double SelfSimilarSolution::prefactor(double t) const {
  require_time(t);
  switch (regime_) {
    case Regime::Forward: return std::pow(t, -alpha_);
    case Regime::Backward: return std::pow(T_ - t, alpha_);
    default: return std::exp(-alpha_ * t);
  }
}

double SelfSimilarSolution::scale(double t) const {
  require_time(t);
  switch (regime_) {
    case Regime::Forward: return std::pow(t, -beta_);
    case Regime::Backward: return std::pow(T_ - t, beta_);
    default: return std::exp(-beta_ * t);
  }
}

double SelfSimilarSolution::prefactor_rate(double t) const {
  require_time(t);
  switch (regime_) {
    case Regime::Forward: return -alpha_ / t;
    case Regime::Backward: return -alpha_ / (T_ - t);
    default: return -alpha_;
  }
}

double SelfSimilarSolution::scale_rate(double t) const {
  require_time(t);
  switch (regime_) {
    case Regime::Forward: return -beta_ / t;
    case Regime::Backward: return -beta_ / (T_ - t);
    default: return -beta_;
  }
}

double SelfSimilarSolution::value(double r, double t) const {
  return prefactor(t) * sol_->evaluate(r * scale(t)).v;
}

double SelfSimilarSolution::time_derivative(double r, double t) const {
  const double y = r * scale(t);
  const PointValue pv = sol_->evaluate(y);
  return prefactor(t) * (prefactor_rate(t) * pv.v + scale_rate(t) * y * pv.dv);
}

SelfSimilarSolution build_selfsimilar(std::shared_ptr<const Solution> sol, Regime regime,
                                      std::optional<double> T, bool enforce_relation) {
  if (!sol) throw InvalidParameters("no solution");
  if (regime == Regime::Generic) throw RegimeMismatch("generic parameters have no self-similar form");
  if (enforce_relation) {
    const Regime actual = classify_regime(sol->params());
    if (actual != regime)
      throw RegimeMismatch("parameters are " + std::string(to_string(actual)) + ", not " +
                           std::string(to_string(regime)));
  }
  double horizon = 0.0;
  if (regime == Regime::Backward) {
    if (!T || !(*T > 0.0)) throw InvalidParameters("backward solutions need T > 0");
    horizon = *T;
  }
  return SelfSimilarSolution(std::move(sol), regime, horizon);
}

namespace {

struct PointResidual {
  double rel = 0.0;
  double chain = 0.0;
};

PointResidual residual_at(const SelfSimilarSolution& ss, double r, double t, double h, double dt,
                          double eps_scale) {
  const Solution& sol = ss.solution();
  const Parameters& p = sol.params();
  if (!(r - h > 0.0)) throw OutOfRange("stencil reaches r <= 0");
  for (double tt : {t - dt, t, t + dt})
    if (!ss.time_ok(tt)) throw OutOfRange("stencil leaves the time domain");

  const double S = ss.scale(t), P = ss.prefactor(t);
  const double Sm = ss.scale(t - dt), Sp = ss.scale(t + dt);
  const double args[] = {(r - h) * S, r * S, (r + h) * S, r * Sm, r * Sp};
  const double lo = *std::min_element(std::begin(args), std::end(args));
  const double hi = *std::max_element(std::begin(args), std::end(args));
  if (!sol.covers(lo) || !sol.covers(hi)) throw OutOfRange("stencil outside the computed profile");
  const LocalTrajectory traj = sol.trajectory(lo, hi);

  const double um = P * traj.at(args[0]).v;
  const PointValue c = traj.at(args[1]);
  const double u0 = P * c.v;
  const double up = P * traj.at(args[2]).v;
  const double u_prev = ss.prefactor(t - dt) * traj.at(args[3]).v;
  const double u_next = ss.prefactor(t + dt) * traj.at(args[4]).v;

  const double ut = (u_next - u_prev) / (2.0 * dt);
  const double gm = std::pow(um, p.m), g0 = std::pow(u0, p.m), gp = std::pow(up, p.m);
  const double lap = (gp - 2.0 * g0 + gm) / (h * h) + (p.n - 1.0) / r * (gp - gm) / (2.0 * h);
  const double diff = (p.n - 1.0) / p.m * lap;

  const double ut_chain = P * (ss.prefactor_rate(t) * c.v + ss.scale_rate(t) * args[1] * c.dv);
  PointResidual out;
  out.rel = std::abs(ut - diff) / (std::abs(ut) + std::abs(diff) + eps_scale);
  out.chain = std::abs(ut - ut_chain) / (std::abs(ut_chain) + eps_scale);
  return out;
}

}  // namespace

ResidualStats pde_residual(const SelfSimilarSolution& ss, const std::vector<double>& radii,
                           const std::vector<double>& times, double h, double dt) {
  if (!(h > 0.0) || !(dt > 0.0)) throw InvalidParameters("h and dt must be positive");
  if (radii.empty() || times.empty()) throw InvalidParameters("empty residual grid");
  const double eps_scale = 1e-12 * ss.solution().params().eta;
  ResidualStats st;
  st.radii = radii;
  st.times = times;
  st.h = h;
  st.dt = dt;
  for (double t : times) {
    for (double r : radii) {
      const PointResidual a = residual_at(ss, r, t, h, dt, eps_scale);
      const PointResidual b = residual_at(ss, r, t, 0.5 * h, 0.5 * dt, eps_scale);
      if (a.rel > st.max_rel_residual) {
        st.max_rel_residual = a.rel;
        st.worst_r = r;
        st.worst_t = t;
      }
      st.max_rel_residual_half = std::max(st.max_rel_residual_half, b.rel);
      st.chain_rule_mismatch = std::max(st.chain_rule_mismatch, a.chain);
    }
  }
  st.order_estimate = st.max_rel_residual_half > 0.0
                          ? std::log2(st.max_rel_residual / st.max_rel_residual_half)
                          : 0.0;
  return st;
}

}  // namespace fastdiff
