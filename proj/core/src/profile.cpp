#include "fastdiff/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fastdiff/dopri5.hpp"
#include "fastdiff/errors.hpp"

namespace fastdiff {

LocalTrajectory::LocalTrajectory(ProfileEquation eq, ProfileSample base, int steps)
    : eq_(eq), base_(base), steps_(std::max(steps, 1)) {}

PointValue LocalTrajectory::at(double r) const {
  if (r < base_.r) throw OutOfRange("trajectory evaluated below its base radius");
  if (r == base_.r) return {base_.v, base_.dv};
  auto f = [this](double x, const std::array<double, 2>& y) { return eq_.radial_rhs(x, y); };
  const auto y = dopri5_fixed<2>(f, base_.r, {base_.v, base_.dv}, r, steps_);
  return {y[0], y[1]};
}

Profile::Profile(ProfileEquation eq, std::vector<ProfileSample> samples, double tolerance,
                 bool truncated)
    : eq_(eq), samples_(std::move(samples)), tol_(tolerance), truncated_(truncated) {
  if (samples_.size() < 2) throw std::invalid_argument("Profile needs at least two samples");
  std::vector<double> r, v, dv;
  r.reserve(samples_.size());
  v.reserve(samples_.size());
  dv.reserve(samples_.size());
  d2v_.reserve(samples_.size());
  for (const auto& s : samples_) {
    r.push_back(s.r);
    v.push_back(s.v);
    dv.push_back(s.dv);
    d2v_.push_back(s.r == 0.0 ? 2.0 * eq_.origin_c2(s.v) : eq_.radial_accel(s.r, s.v, s.dv));
  }
  v_track_ = HermiteTrack(r, std::move(v), dv);
  dv_track_ = HermiteTrack(std::move(r), std::move(dv), d2v_);
}

PointValue Profile::evaluate(double r) const {
  if (!covers(r)) throw OutOfRange("radius outside the r-chart profile");
  const auto [v, dv_from_v] = v_track_(r);
  (void)dv_from_v;
  return {v, dv_track_(r).first};
}

std::size_t Profile::knot_at_or_below(double r) const {
  auto it = std::upper_bound(samples_.begin(), samples_.end(), r,
                             [](double x, const ProfileSample& s) { return x < s.r; });
  return static_cast<std::size_t>(it - samples_.begin()) - 1;
}

PointValue Profile::evaluate_exact(double r) const {
  if (!covers(r)) throw OutOfRange("radius outside the r-chart profile");
  const std::size_t i = knot_at_or_below(r);
  const auto& k = samples_[i];
  if (r == k.r) return {k.v, k.dv};
  if (k.r == 0.0) {
    const double c2 = d2v_[0] / 2.0;
    return {k.v + c2 * r * r, 2.0 * c2 * r};
  }
  return LocalTrajectory(eq_, k, 8).at(r);
}

LocalTrajectory Profile::trajectory(double r_lo, double r_hi) const {
  if (!covers(r_lo) || !(r_hi >= r_lo)) throw OutOfRange("trajectory range outside profile");
  std::size_t i = knot_at_or_below(r_lo);
  if (samples_[i].r == 0.0) {
    if (samples_.size() < 2 || r_lo < samples_[1].r)
      throw OutOfRange("trajectory range reaches into the series region");
    i = 1;
  }
  const double h = i + 1 < samples_.size() ? samples_[i + 1].r - samples_[i].r
                                           : samples_[i].r - samples_[i - 1].r;
  const int steps = 16 * static_cast<int>(std::ceil((r_hi - samples_[i].r) / h) + 1);
  return LocalTrajectory(eq_, samples_[i], steps);
}

ProfileSample LogProfile::to_radial(double m, const LogSample& ls) {
  const double r = std::exp(ls.s);
  const double v = std::exp((std::log(ls.w) - 2.0 * ls.s) / (1.0 - m));
  const double dv = (ls.ws / ls.w - 2.0) * v / ((1.0 - m) * r);
  return {r, v, dv};
}

LogSample LogProfile::from_radial(double m, const ProfileSample& ps) {
  const double w = ps.r * ps.r * std::pow(ps.v, 1.0 - m);
  return {std::log(ps.r), w, w * (2.0 + (1.0 - m) * ps.r * ps.dv / ps.v)};
}

LogProfile::LogProfile(ProfileEquation eq, std::vector<LogSample> samples, double tolerance,
                       bool truncated)
    : eq_(eq), samples_(std::move(samples)), tol_(tolerance), truncated_(truncated) {
  if (samples_.size() < 2) throw std::invalid_argument("LogProfile needs at least two samples");
  std::vector<double> s, w, ws, wss;
  for (const auto& x : samples_) {
    s.push_back(x.s);
    w.push_back(x.w);
    ws.push_back(x.ws);
    wss.push_back(eq_.log_accel(x.w, x.ws));
  }
  w_track_ = HermiteTrack(s, std::move(w), ws);
  ws_track_ = HermiteTrack(std::move(s), std::move(ws), std::move(wss));
}

LogSample LogProfile::evaluate(double s) const {
  if (!covers(s)) throw OutOfRange("s outside the log-chart profile");
  return {s, w_track_(s).first, ws_track_(s).first};
}

PointValue LogProfile::radial(double r) const {
  const auto ps = to_radial(m(), evaluate(std::log(r)));
  return {ps.v, ps.dv};
}

double LogProfile::v1(double s) const { return std::pow(evaluate(s).w, 1.0 / (1.0 - m())); }

}  // namespace fastdiff
