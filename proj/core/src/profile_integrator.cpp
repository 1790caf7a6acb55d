#include "fastdiff/profile_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fastdiff/errors.hpp"

namespace fastdiff {
namespace {

void raise(const StepperStats& st, double radius) {
  if (st.status == StepStatus::PositivityLoss) throw PositivityLoss(radius);
  if (st.status == StepStatus::StepUnderflow) throw StepUnderflow(radius);
}

}  // namespace

Profile integrate_r(const Parameters& p, const SeriesExpansion& se, double r_max, Tolerance tol) {
  validate(p);
  return integrate_r(ProfileEquation::from(p), se, r_max, tol);
}

Profile integrate_r(const ProfileEquation& eq, const SeriesExpansion& se, double r_max,
                    Tolerance tol, std::size_t max_steps, IntegrationStats* stats) {
  if (!(r_max > se.r_switch)) throw InvalidParameters("r_max must exceed the series radius");
  if (!(tol.rel > 0.0) || !(tol.abs >= 0.0)) throw InvalidParameters("tolerance must be positive");

  std::vector<ProfileSample> samples{{0.0, se.eta, 0.0}};
  const PointValue seed = eval_series(se, se.r_switch);
  StepperOptions opt;
  opt.tol = tol;
  opt.max_steps = max_steps;
  auto rhs = [&eq](double r, const std::array<double, 2>& y) { return eq.radial_rhs(r, y); };
  auto admissible = [](const std::array<double, 2>& y) { return y[0] > kPositivityFloor; };
  auto observe = [&samples](double r, const std::array<double, 2>& y,
                            const std::array<double, 2>&) { samples.push_back({r, y[0], y[1]}); };
  const StepperStats st =
      dopri5_integrate<2>(rhs, se.r_switch, {seed.v, seed.dv}, r_max, opt, admissible, observe);
  raise(st, st.t_end);
  if (stats) *stats = {st.accepted, st.rejected, st.status == StepStatus::BudgetExhausted};
  return Profile(eq, std::move(samples), tol.rel, st.status == StepStatus::BudgetExhausted);
}

LogSample handoff_to_log(const Profile& profile, double r_h) {
  if (!(r_h > 0.0) || !profile.covers(r_h)) throw OutOfRange("handoff radius outside profile");
  const PointValue pv = profile.evaluate_exact(r_h);
  if (!(pv.v > 0.0)) throw PositivityLoss(r_h);
  return LogProfile::from_radial(profile.equation().m, {r_h, pv.v, pv.dv});
}

LogProfile integrate_log(const Parameters& p, LogSample start, double s_max, Tolerance tol) {
  validate(p);
  return integrate_log(ProfileEquation::from(p), start, s_max, tol);
}

LogProfile integrate_log(const ProfileEquation& eq, LogSample start, double s_max,
                         Tolerance tol, std::size_t max_steps, IntegrationStats* stats) {
  if (!(start.w > 0.0)) throw InvalidParameters("log chart needs w > 0 at the start");
  if (!(s_max > start.s)) throw InvalidParameters("s_max must exceed the start");
  std::vector<LogSample> samples;
  StepperOptions opt;
  opt.tol = tol;
  opt.max_steps = max_steps;
  auto rhs = [&eq](double, const std::array<double, 2>& y) { return eq.log_rhs(y); };
  auto admissible = [](const std::array<double, 2>& y) { return y[0] > 0.0; };
  auto observe = [&samples](double s, const std::array<double, 2>& y,
                            const std::array<double, 2>&) { samples.push_back({s, y[0], y[1]}); };
  const StepperStats st =
      dopri5_integrate<2>(rhs, start.s, {start.w, start.ws}, s_max, opt, admissible, observe);
  raise(st, std::exp(st.t_end));
  if (stats) *stats = {st.accepted, st.rejected, st.status == StepStatus::BudgetExhausted};
  if (samples.size() < 2) throw StepUnderflow(std::exp(st.t_end));
  return LogProfile(eq, std::move(samples), tol.rel, st.status == StepStatus::BudgetExhausted);
}

bool stiff_tail(const ProfileEquation& eq, double s_start, double s_max) {
  if (!(eq.beta > 0.0)) return false;
  const double gamma = -eq.rho1() / eq.beta;
  return gamma * (s_max - s_start) > 1.0;
}

LogProfile trim_to_quarter_decade(const LogProfile& log) {
  const double grid = std::numbers::ln10 / 4.0;
  const double s_cut = std::floor(log.s_end() / grid + 1e-9) * grid;
  const auto& all = log.samples();
  std::vector<LogSample> kept;
  for (const auto& x : all)
    if (x.s <= s_cut) kept.push_back(x);
  if (kept.empty()) return log;
  if (kept.back().s < s_cut) {
    const auto& eq = log.equation();
    auto rhs = [&eq](double, const std::array<double, 2>& y) { return eq.log_rhs(y); };
    const LogSample& b = kept.back();
    const auto y = dopri5_fixed<2>(rhs, b.s, {b.w, b.ws}, s_cut, 8);
    kept.push_back({s_cut, y[0], y[1]});
  }
  if (kept.size() < 2) return log;
  return LogProfile(log.equation(), std::move(kept), log.tolerance(), false);
}

Solution::Solution(Parameters p, SeriesExpansion se, Profile profile, LogProfile log,
                   std::map<std::string, double> diagnostics)
    : params_(p),
      series_(se),
      profile_(std::move(profile)),
      log_(std::move(log)),
      diag_(std::move(diagnostics)) {}

double Solution::r_max() const {
  return std::max(profile_.r_end(), std::exp(log_.s_end()));
}

double Solution::tolerance_at(double r) const {
  return r <= profile_.r_end() ? profile_.tolerance() : log_.tolerance();
}

PointValue Solution::evaluate(double r) const {
  if (profile_.covers(r)) return profile_.evaluate(r);
  if (!covers(r)) throw OutOfRange("radius outside the computed solution");
  return log_.radial(r);
}

PointValue Solution::evaluate_exact(double r) const {
  if (profile_.covers(r)) return profile_.evaluate_exact(r);
  return trajectory(r, r).at(r);
}

LocalTrajectory Solution::trajectory(double r_lo, double r_hi) const {
  if (!covers(r_lo) || !covers(r_hi) || r_hi < r_lo)
    throw OutOfRange("trajectory range outside the computed solution");
  if (r_lo <= profile_.r_end()) return profile_.trajectory(r_lo, r_hi);
  const auto& ls = log_.samples();
  const double s_lo = std::log(r_lo);
  auto it = std::upper_bound(ls.begin(), ls.end(), s_lo,
                             [](double s, const LogSample& x) { return s < x.s; });
  std::size_t i = it == ls.begin() ? 0 : static_cast<std::size_t>(it - ls.begin()) - 1;
  const ProfileSample base = LogProfile::to_radial(log_.m(), ls[i]);
  const double next_r = i + 1 < ls.size() ? std::exp(ls[i + 1].s)
                                          : std::exp(2.0 * ls[i].s - ls[i - 1].s);
  const double h = next_r - base.r;
  const int steps = 16 * static_cast<int>(std::ceil((r_hi - base.r) / h) + 1);
  return LocalTrajectory(profile_.equation(), base, steps);
}

std::vector<ProfileSample> Solution::knots() const {
  std::vector<ProfileSample> out = profile_.samples();
  for (const auto& ls : log_.samples())
    if (std::exp(ls.s) > profile_.r_end()) out.push_back(LogProfile::to_radial(log_.m(), ls));
  return out;
}

Solution solve_profile(const Parameters& p, const SolveConfig& cfg) {
  validate(p);
  const HypothesisReport hyp = check_hypotheses(p);
  if (!hyp.existence_ok && !cfg.override_hypotheses)
    throw HypothesisViolation("existence range violated: need beta > 0 and alpha <= beta(n-2)/m");
  if (!(cfg.r_handoff > 0.0) || !(cfg.s_end > std::log(cfg.r_handoff)))
    throw InvalidParameters("need r_handoff > 0 and s_end > log(r_handoff)");

  const ProfileEquation eq = ProfileEquation::from(p);
  const SeriesExpansion se = expand_at_origin(eq, p.eta, cfg.r_tol.rel);
  const double r_chart_end = std::max(cfg.r_max, 2.0 * cfg.r_handoff);
  IntegrationStats rs, ss;
  Profile prof = integrate_r(eq, se, r_chart_end, cfg.r_tol, cfg.max_steps, &rs);
  if (prof.r_end() < 2.0 * cfg.r_handoff) throw StepUnderflow(prof.r_end());

  const LogSample start = handoff_to_log(prof, cfg.r_handoff);
  const bool stiff = cfg.stiff_step_budget > 0 && stiff_tail(eq, start.s, cfg.s_end);
  LogProfile log = integrate_log(eq, start, cfg.s_end, cfg.s_tol,
                                 stiff ? cfg.stiff_step_budget : cfg.max_steps, &ss);
  bool stiffness_limited = false;
  if (stiff && ss.truncated) {
    log = trim_to_quarter_decade(log);
    ss.truncated = false;
    stiffness_limited = true;
  }

  // Dual-chart consistency on [r_h, 2 r_h], at log-chart knots against exact r-chart values.
  double overlap = 0.0;
  const double s_hi = std::log(2.0 * cfg.r_handoff);
  for (const auto& ls : log.samples()) {
    if (ls.s > s_hi) break;
    const double r = std::exp(ls.s);
    const PointValue pv = prof.evaluate_exact(r);
    const double w_r = r * r * std::pow(pv.v, 1.0 - p.m);
    overlap = std::max(overlap, std::abs(w_r - ls.w) / std::abs(ls.w));
  }

  std::map<std::string, double> diag{
      {"steps_r", static_cast<double>(rs.accepted)},
      {"rejected_r", static_cast<double>(rs.rejected)},
      {"steps_s", static_cast<double>(ss.accepted)},
      {"rejected_s", static_cast<double>(ss.rejected)},
      {"overlap_error", overlap},
      {"overlap_threshold", 10.0 * cfg.s_tol.rel},
      {"r_switch", se.r_switch},
      {"truncation_estimate", se.truncation_estimate},
      {"r_handoff", cfg.r_handoff},
      {"r_chart_end", prof.r_end()},
      {"s_end_requested", cfg.s_end},
      {"s_end", log.s_end()},
      {"stiffness_limited", stiffness_limited ? 1.0 : 0.0},
      {"truncated", (rs.truncated || ss.truncated) ? 1.0 : 0.0},
  };
  return Solution(p, se, std::move(prof), std::move(log), std::move(diag));
}

}  // namespace fastdiff
