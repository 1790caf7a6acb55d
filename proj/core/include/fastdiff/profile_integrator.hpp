#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "fastdiff/dopri5.hpp"
#include "fastdiff/equation.hpp"
#include "fastdiff/model.hpp"
#include "fastdiff/origin_series.hpp"
#include "fastdiff/profile.hpp"

namespace fastdiff {

inline constexpr double kPositivityFloor = 1e-300;
inline constexpr Tolerance kRChartTol{1e-10, 1e-12};
inline constexpr Tolerance kSChartTol{1e-9, 1e-11};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  bool truncated = false;
};

Profile integrate_r(const Parameters& p, const SeriesExpansion& se, double r_max,
                    Tolerance tol = kRChartTol);
Profile integrate_r(const ProfileEquation& eq, const SeriesExpansion& se, double r_max,
                    Tolerance tol, std::size_t max_steps = 2'000'000,
                    IntegrationStats* stats = nullptr);

LogSample handoff_to_log(const Profile& profile, double r_h);

LogProfile integrate_log(const Parameters& p, LogSample start, double s_max,
                         Tolerance tol = kSChartTol);
LogProfile integrate_log(const ProfileEquation& eq, LogSample start, double s_max,
                         Tolerance tol, std::size_t max_steps = 2'000'000,
                         IntegrationStats* stats = nullptr);

// Power-decay charts (rho1 < 0, beta > 0) grow like w ~ e^{gamma s} and the
// tail relaxation rate beta w/(n-1) makes them stiff for explicit steps.
bool stiff_tail(const ProfileEquation& eq, double s_start, double s_max);

// Cuts a log chart back to the last quarter-decade radius 10^{j/4} it reached;
// the end point is produced by fixed-step re-integration from the last knot.
LogProfile trim_to_quarter_decade(const LogProfile& log);

struct SolveConfig {
  double r_handoff = 1.0;
  double r_max = 10.0;  // r-chart end is max(r_max, 2 r_handoff)
  double s_end = 40.0;
  Tolerance r_tol = kRChartTol;
  Tolerance s_tol = kSChartTol;
  bool override_hypotheses = false;
  std::size_t max_steps = 2'000'000;
  // Step budget for stiff power-decay tails; the chart ends at the last
  // quarter-decade radius reached. 0 means no special treatment.
  std::size_t stiff_step_budget = 1'000'000;
};

// Series seed, r-chart and log chart of one profile. Immutable.
class Solution {
 public:
  Solution(Parameters p, SeriesExpansion se, Profile profile, LogProfile log,
           std::map<std::string, double> diagnostics);

  const Parameters& params() const { return params_; }
  const SeriesExpansion& series() const { return series_; }
  const Profile& profile() const { return profile_; }
  const LogProfile& logprofile() const { return log_; }
  const std::map<std::string, double>& diagnostics() const { return diag_; }
  double overlap_error() const { return diag_.at("overlap_error"); }

  double r_max() const;
  bool covers(double r) const { return r >= 0.0 && r <= r_max(); }
  // Tolerance of the chart used at r.
  double tolerance_at(double r) const;

  PointValue evaluate(double r) const;
  PointValue evaluate_exact(double r) const;
  LocalTrajectory trajectory(double r_lo, double r_hi) const;

  // r-chart samples followed by log-chart samples beyond the r-chart end.
  std::vector<ProfileSample> knots() const;

 private:
  Parameters params_;
  SeriesExpansion series_;
  Profile profile_;
  LogProfile log_;
  std::map<std::string, double> diag_;
};

Solution solve_profile(const Parameters& p, const SolveConfig& config = {});

}  // namespace fastdiff
