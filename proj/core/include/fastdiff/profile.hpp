#pragma once

#include <cstddef>
#include <vector>

#include "fastdiff/equation.hpp"
#include "fastdiff/hermite.hpp"
#include "fastdiff/origin_series.hpp"

namespace fastdiff {

struct ProfileSample {
  double r = 0.0;
  double v = 0.0;
  double dv = 0.0;
};

struct LogSample {
  double s = 0.0;
  double w = 0.0;
  double ws = 0.0;
};

// Fixed-substep re-integration of the radial equation from a stored knot.
// Smooth in r (the substep count is fixed at construction), which the
// finite-difference checks rely on; Hermite output is only C1.
class LocalTrajectory {
 public:
  LocalTrajectory(ProfileEquation eq, ProfileSample base, int steps);
  double base_radius() const { return base_.r; }
  PointValue at(double r) const;

 private:
  ProfileEquation eq_;
  ProfileSample base_;
  int steps_;
};

// r-chart samples. samples()[0] is the seed at r = 0.
class Profile {
 public:
  Profile() = default;
  Profile(ProfileEquation eq, std::vector<ProfileSample> samples, double tolerance,
          bool truncated = false);

  const ProfileEquation& equation() const { return eq_; }
  const std::vector<ProfileSample>& samples() const { return samples_; }
  double curvature(std::size_t i) const { return d2v_[i]; }
  double r_start() const { return samples_.front().r; }
  double r_end() const { return samples_.back().r; }
  double tolerance() const { return tol_; }
  bool truncated() const { return truncated_; }
  bool covers(double r) const { return r >= r_start() && r <= r_end(); }

  PointValue evaluate(double r) const;
  // Re-integrates from the closest knot at or below r.
  PointValue evaluate_exact(double r) const;
  // Trajectory usable on [r_lo, r_hi] from a single base knot.
  LocalTrajectory trajectory(double r_lo, double r_hi) const;

 private:
  std::size_t knot_at_or_below(double r) const;

  ProfileEquation eq_;
  std::vector<ProfileSample> samples_;
  std::vector<double> d2v_;
  HermiteTrack v_track_, dv_track_;
  double tol_ = 0.0;
  bool truncated_ = false;
};

// s-chart samples, s = log r, w = r^2 v^{1-m}.
class LogProfile {
 public:
  LogProfile() = default;
  LogProfile(ProfileEquation eq, std::vector<LogSample> samples, double tolerance,
             bool truncated = false);

  const ProfileEquation& equation() const { return eq_; }
  const std::vector<LogSample>& samples() const { return samples_; }
  double s_start() const { return samples_.front().s; }
  double s_end() const { return samples_.back().s; }
  double m() const { return eq_.m; }
  double rho1() const { return eq_.rho1(); }
  double tolerance() const { return tol_; }
  // True when the step budget stopped integration before the requested s_max.
  bool truncated() const { return truncated_; }
  bool covers(double s) const { return !samples_.empty() && s >= s_start() && s <= s_end(); }

  LogSample evaluate(double s) const;
  PointValue radial(double r) const;
  // v1 = w^{1/(1-m)}, the equivalent chart of the second-order theory.
  double v1(double s) const;

  static ProfileSample to_radial(double m, const LogSample& ls);
  static LogSample from_radial(double m, const ProfileSample& ps);

 private:
  ProfileEquation eq_;
  std::vector<LogSample> samples_;
  HermiteTrack w_track_, ws_track_;
  double tol_ = 0.0;
  bool truncated_ = false;
};

}  // namespace fastdiff
