#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fastdiff/model.hpp"
#include "fastdiff/profile.hpp"
#include "fastdiff/profile_integrator.hpp"

namespace fastdiff {

enum class DecayKind { LogCorrected, Power };

struct TracePoint {
  double scale = 0.0;
  double value = 0.0;
};

struct DecayEstimate {
  DecayKind kind = DecayKind::LogCorrected;
  std::vector<TracePoint> trace;
  double raw_last = 0.0;
  double extrapolated = 0.0;
  std::optional<double> expected;
  std::optional<double> rel_error_vs_expected;
  bool converged = false;

  // Log-corrected: tail model w_s ~ a + c/s on [window_lo, window_hi].
  double fit_c = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double alt_last = 0.0;  // w(s_end)/s_end, the slower estimator

  // Power: r^{p0} q'/q sampled at r_end/100, r_end/10, r_end.
  std::vector<TracePoint> proxy;
  bool proxy_decreasing = false;
  double p0 = 0.0;
  double last_decade_drift = 0.0;
  int monotone_direction = 0;  // +1 nondecreasing, -1 nonincreasing, 0 mixed

  std::string assumption;
};

// 2(n-1)(n-2-nm)/(beta(1-m)). Refuses m = (n-2)/n and beta <= 0.
double expected_log_constant(const Parameters& p);

DecayEstimate estimate_log_decay(const Solution& sol);
// Shared with the m = 0 equation; `expected` may be absent.
DecayEstimate estimate_log_decay(const LogProfile& log, std::optional<double> expected);

DecayEstimate estimate_power_decay(const Solution& sol);

std::string_view to_string(DecayKind k);

}  // namespace fastdiff
