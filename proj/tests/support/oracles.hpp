#pragma once

// Reference computations that share no code with the library. The profile
// is integrated in flux form
//   (n-1) r^{n-1} v^{m-1} v' = -(alpha - n beta) I - beta r^n v,   I' = r^{n-1} v
// with classical RK4 on a uniform grid. m = 0 is the log equation.

#include <algorithm>
#include <array>
#include <cmath>

namespace oracle {

struct Flux {
  int n;
  double m, alpha, beta;

  std::array<double, 2> operator()(double r, const std::array<double, 2>& y) const {
    const double v = y[0], I = y[1];
    const double rn1 = std::pow(r, n - 1);
    const double dv = -std::pow(v, 1.0 - m) * ((alpha - n * beta) * I + beta * r * rn1 * v) /
                      ((n - 1) * rn1);
    return {dv, rn1 * v};
  }
};

// v(r) by RK4 from r0 with v(r0) = eta, I(r0) = eta r0^n / n. Steps are
// geometric near the origin (h <= 1e-3 t) and capped at h_max further out;
// a uniform first step would carry an O(1) relative error in I.
inline double rk4_value(const Flux& f, double eta, double r0, double r, double h_max) {
  std::array<double, 2> y{eta, eta * std::pow(r0, f.n) / f.n};
  auto add = [](const std::array<double, 2>& a, const std::array<double, 2>& b, double s) {
    return std::array<double, 2>{a[0] + s * b[0], a[1] + s * b[1]};
  };
  for (double t = r0; t < r;) {
    const double h = std::min({1e-3 * t, h_max, r - t});
    const auto k1 = f(t, y);
    const auto k2 = f(t + h / 2, add(y, k1, h / 2));
    const auto k3 = f(t + h / 2, add(y, k2, h / 2));
    const auto k4 = f(t + h, add(y, k3, h));
    for (int j = 0; j < 2; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    t = (h == r - t) ? r : t + h;
  }
  return y[0];
}

// Second-order origin coefficient from g(r) = (v(r) - eta)/r^2 = c2 + c4 r^2 + c6 r^4 + ...,
// Romberg-combined over r, 2r, 4r to remove the r^2 and r^4 terms.
inline double origin_c2(int n, double m, double alpha, double beta, double eta,
                        double r = 0.01) {
  const Flux f{n, m, alpha, beta};
  const double r0 = 1e-8;
  auto g = [&](int k) {
    const double rk = k * r;
    return (rk4_value(f, eta, r0, rk, r / 4000) - eta) / (rk * rk);
  };
  const double g1 = g(1), g2 = g(2), g4 = g(4);
  const double h1 = (4 * g1 - g2) / 3, h2 = (4 * g2 - g4) / 3;
  return (16 * h1 - h2) / 15;
}

}  // namespace oracle
