#pragma once

// Dormand-Prince 5(4) with Hairer's PI step control. Header-only so the
// right-hand side inlines.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace fastdiff {

struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;
};

struct StepperOptions {
  Tolerance tol;
  double initial_step = 0.0;  // 0: automatic
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 5'000'000;
  double min_step_rel = 1e-14;  // underflow when h < min_step_rel * max(|t|, 1)
};

enum class StepStatus { Reached, BudgetExhausted, StepUnderflow, PositivityLoss };

struct StepperStats {
  StepStatus status = StepStatus::Reached;
  double t_end = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evals = 0;
};

namespace dp5 {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                        a75 = -2187.0 / 6784, a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N>
using Vec = std::array<double, N>;

// One step from (t, y, k1). Fills y5, k7 (= f(t+h, y5)) and the error vector.
// Returns false if any stage state was inadmissible.
template <std::size_t N, class Rhs, class Admissible>
bool step(Rhs& f, Admissible& ok, double t, const Vec<N>& y, const Vec<N>& k1, double h,
          Vec<N>& y5, Vec<N>& k7, Vec<N>& err) {
  Vec<N> k2, k3, k4, k5, k6, z;
  for (std::size_t i = 0; i < N; ++i) z[i] = y[i] + h * a21 * k1[i];
  if (!ok(z)) return false;
  k2 = f(t + c2 * h, z);
  for (std::size_t i = 0; i < N; ++i) z[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  if (!ok(z)) return false;
  k3 = f(t + c3 * h, z);
  for (std::size_t i = 0; i < N; ++i)
    z[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  if (!ok(z)) return false;
  k4 = f(t + c4 * h, z);
  for (std::size_t i = 0; i < N; ++i)
    z[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  if (!ok(z)) return false;
  k5 = f(t + c5 * h, z);
  for (std::size_t i = 0; i < N; ++i)
    z[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  if (!ok(z)) return false;
  k6 = f(t + h, z);
  for (std::size_t i = 0; i < N; ++i)
    y5[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
  if (!ok(y5)) return false;
  k7 = f(t + h, y5);
  for (std::size_t i = 0; i < N; ++i)
    err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  return true;
}

template <std::size_t N>
bool finite(const Vec<N>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace dp5

// Integrates y' = f(t, y) from t0 to t1 > t0. observe(t, y, dydt) is called at
// t0 and after every accepted step. admissible(y) rejects trial states; a
// step-size collapse caused by such rejections reports PositivityLoss.
template <std::size_t N, class Rhs, class Admissible, class Observer>
StepperStats dopri5_integrate(Rhs&& f, double t0, std::array<double, N> y, double t1,
                              const StepperOptions& opt, Admissible&& admissible,
                              Observer&& observe) {
  using Vec = std::array<double, N>;
  constexpr double safe = 0.9, fac1 = 0.2, fac2 = 10.0, beta = 0.04;
  constexpr double expo1 = 0.2 - beta * 0.75;
  const double facc1 = 1.0 / fac1, facc2 = 1.0 / fac2;

  StepperStats st;
  double t = t0;
  Vec k1 = f(t, y);
  st.rhs_evals = 1;
  observe(t, y, k1);

  auto scaled_norm = [&](const Vec& e, const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opt.tol.abs + opt.tol.rel * std::max(std::abs(a[i]), std::abs(b[i]));
      s += (e[i] / sk) * (e[i] / sk);
    }
    return std::sqrt(s / N);
  };

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Hairer's starting step heuristic.
    Vec zero{};
    const double d0 = scaled_norm(y, y, zero);
    const double d1 = scaled_norm(k1, y, zero);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, t1 - t0);
    Vec y1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y[i] + h0 * k1[i];
    double d2 = 0.0;
    if (admissible(y1)) {
      Vec k2 = f(t + h0, y1);
      ++st.rhs_evals;
      Vec dk;
      for (std::size_t i = 0; i < N; ++i) dk[i] = k2[i] - k1[i];
      d2 = scaled_norm(dk, y, zero) / h0;
    }
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    h = std::min(100.0 * h0, h1);
  }
  h = std::min({h, opt.max_step, t1 - t0});

  double facold = 1e-4;
  bool last_rejected = false;
  bool inadmissible_run = false;
  Vec y5, k7, err;
  while (t < t1) {
    if (st.accepted >= opt.max_steps) {
      st.status = StepStatus::BudgetExhausted;
      st.t_end = t;
      return st;
    }
    if (h < opt.min_step_rel * std::max(std::abs(t), 1.0)) {
      st.status = inadmissible_run ? StepStatus::PositivityLoss : StepStatus::StepUnderflow;
      st.t_end = t;
      return st;
    }
    const bool last = t + h >= t1;
    if (last) h = t1 - t;
    const bool ok = dp5::step<N>(f, admissible, t, y, k1, h, y5, k7, err);
    st.rhs_evals += 6;
    if (!ok || !dp5::finite(y5) || !dp5::finite(k7)) {
      inadmissible_run = !ok;
      h *= 0.25;
      last_rejected = true;
      ++st.rejected;
      continue;
    }
    const double e = scaled_norm(err, y, y5);
    if (!std::isfinite(e)) {
      inadmissible_run = false;
      h *= 0.25;
      last_rejected = true;
      ++st.rejected;
      continue;
    }
    const double fac11 = std::pow(e, expo1);
    double fac = fac11 / std::pow(facold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double hnew = h / fac;
    if (e <= 1.0) {
      facold = std::max(e, 1e-4);
      t = last ? t1 : t + h;
      y = y5;
      k1 = k7;
      ++st.accepted;
      inadmissible_run = false;
      observe(t, y, k1);
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = std::min(hnew, opt.max_step);
    } else {
      h /= std::min(facc1, fac11 / safe);
      last_rejected = true;
      ++st.rejected;
    }
  }
  st.status = StepStatus::Reached;
  st.t_end = t;
  return st;
}

// Fixed-step DOPRI5 (fifth-order solution), used for exact local re-evaluation.
template <std::size_t N, class Rhs>
std::array<double, N> dopri5_fixed(Rhs&& f, double t0, std::array<double, N> y, double t1,
                                   int steps) {
  auto always = [](const std::array<double, N>&) { return true; };
  const double h = (t1 - t0) / steps;
  std::array<double, N> k1 = f(t0, y), y5, k7, err;
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    dp5::step<N>(f, always, t, y, k1, h, y5, k7, err);
    y = y5;
    k1 = k7;
  }
  return y;
}

}  // namespace fastdiff
