#include "fastdiff/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fastdiff/errors.hpp"

namespace fastdiff {

std::string_view to_string(DecayKind k) {
  return k == DecayKind::LogCorrected ? "log_corrected" : "power";
}

double expected_log_constant(const Parameters& p) {
  validate(p);
  if (at_m_endpoint(p)) throw EndpointRefused("decay constant needs m < (n-2)/n");
  if (!(p.beta > 0.0)) throw HypothesisViolation("decay constant needs beta > 0");
  const long double n = p.n, m = p.m, beta = p.beta;
  return static_cast<double>(2.0L * (n - 1.0L) * (n - 2.0L - n * m) / (beta * (1.0L - m)));
}

namespace {

void require_strict(const Parameters& p) {
  if (at_m_endpoint(p)) throw EndpointRefused("decay estimators need m < (n-2)/n");
}

}  // namespace

DecayEstimate estimate_log_decay(const Solution& sol) {
  const Parameters& p = sol.params();
  require_strict(p);
  if (!check_hypotheses(p).log_decay_ok)
    throw HypothesisViolation("log-corrected decay needs alpha = 2beta/(1-m) > 0");
  return estimate_log_decay(sol.logprofile(), expected_log_constant(p));
}

DecayEstimate estimate_log_decay(const LogProfile& log, std::optional<double> expected) {
  DecayEstimate est;
  est.kind = DecayKind::LogCorrected;
  const double s_end = log.s_end();
  for (double s = 10.0; s < s_end - 1e-9; s += 5.0)
    if (log.covers(s)) est.trace.push_back({s, log.evaluate(s).ws});
  const LogSample last = log.samples().back();
  est.trace.push_back({s_end, last.ws});
  est.raw_last = last.ws;
  est.alt_last = last.w / s_end;

  // Least squares for w_s(s) = a + c x, x = 1/s, on a uniform grid of the window.
  est.window_lo = std::max(0.5 * s_end, log.s_start());
  est.window_hi = s_end;
  constexpr int kPoints = 201;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < kPoints; ++i) {
    const double s = est.window_lo + (est.window_hi - est.window_lo) * i / (kPoints - 1);
    const double x = 1.0 / s;
    const double y = i == kPoints - 1 ? last.ws : log.evaluate(s).ws;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = kPoints * sxx - sx * sx;
  est.fit_c = (kPoints * sxy - sx * sy) / det;
  est.extrapolated = (sy - est.fit_c * sx) / kPoints;

  est.expected = expected;
  if (expected && *expected != 0.0)
    est.rel_error_vs_expected = std::abs(est.extrapolated - *expected) / std::abs(*expected);
  est.converged = std::abs(est.raw_last - est.extrapolated) / std::abs(est.extrapolated) < 0.02;
  est.last_decade_drift = std::abs(est.raw_last - log.evaluate(std::max(
                                                      log.s_start(), s_end - std::numbers::ln10))
                                                      .ws) /
                          std::abs(est.raw_last);
  est.assumption = "tail model w_s = a + c/s (no rate is known; extrapolation assumption)";
  return est;
}

DecayEstimate estimate_power_decay(const Solution& sol) {
  const Parameters& p = sol.params();
  require_strict(p);
  if (!check_hypotheses(p).power_decay_ok)
    throw HypothesisViolation("power decay needs 2beta/(1-m) > max(alpha, 0)");

  DecayEstimate est;
  est.kind = DecayKind::Power;
  est.p0 = 2.0 - p.alpha / (2.0 * p.beta) * (1.0 - p.m);
  const double grid = std::numbers::ln10 / 4.0;
  const double s_end = sol.logprofile().s_end();
  const int j_end = static_cast<int>(std::floor(s_end / grid + 1e-9));
  const double ab = p.alpha / p.beta;

  if (p.alpha == 0.0) {
    // q = v, and v is the constant eta.
    for (int j = 0; j <= j_end; ++j) est.trace.push_back({std::exp(j * grid), p.eta});
    est.raw_last = est.extrapolated = p.eta;
    est.converged = true;
    est.proxy_decreasing = true;
    est.monotone_direction = 0;
    est.assumption = "alpha = 0: q = v = eta";
    return est;
  }
  if (j_end < 8) throw OutOfRange("power decay needs the solution to reach r >= 100");

  // log q = (alpha/beta) log r + log v, on the quarter-decade grid from r = 1.
  for (int j = 0; j <= j_end; ++j) {
    const double s = j * grid;
    const double r = std::exp(s);
    const PointValue pv = sol.evaluate_exact(std::min(r, sol.r_max()));
    est.trace.push_back({r, std::exp(ab * s + std::log(pv.v))});
  }
  est.raw_last = est.trace.back().value;
  double sum = 0.0;
  int count = 0;
  for (int j = j_end - 4; j <= j_end; ++j, ++count) sum += est.trace[j].value;
  est.extrapolated = sum / count;
  est.last_decade_drift = std::abs(est.trace[j_end].value - est.trace[j_end - 4].value) /
                          std::abs(est.raw_last);

  bool up = true, down = true;
  for (std::size_t i = 1; i < est.trace.size(); ++i) {
    up = up && est.trace[i].value >= est.trace[i - 1].value;
    down = down && est.trace[i].value <= est.trace[i - 1].value;
  }
  est.monotone_direction = up ? 1 : (down ? -1 : 0);

  // r^{p0} q'/q = r^{p0-1} (alpha/beta + r v'/v).
  for (int j : {j_end - 8, j_end - 4, j_end}) {
    const double r = est.trace[j].scale;
    const PointValue pv = sol.evaluate_exact(std::min(r, sol.r_max()));
    est.proxy.push_back({r, std::pow(r, est.p0 - 1.0) * (ab + r * pv.dv / pv.v)});
  }
  est.proxy_decreasing = std::abs(est.proxy[2].value) < std::abs(est.proxy[1].value) &&
                         std::abs(est.proxy[1].value) < std::abs(est.proxy[0].value);
  est.converged = est.last_decade_drift < 1e-3 && est.proxy_decreasing;
  est.assumption = "plateau = mean of q over the last decade";
  return est;
}

}  // namespace fastdiff
