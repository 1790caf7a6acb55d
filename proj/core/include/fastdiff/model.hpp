#pragma once

#include <optional>
#include <string_view>

namespace fastdiff {

struct Parameters {
  int n = 3;
  double m = 0.2;
  double alpha = 2.5;
  double beta = 1.0;
  double eta = 1.0;
};

// Throws InvalidParameters unless n >= 3, 0 < m <= (n-2)/n, eta > 0, all finite.
void validate(const Parameters& p);

double m_endpoint(int n);         // (n-2)/n
double yamabe_exponent(int n);    // (n-2)/(n+2)
double eternal_alpha(double m, double beta);  // 2 beta / (1-m)

// True when m sits on (n-2)/n up to rounding.
bool at_m_endpoint(const Parameters& p);

enum class Regime { Forward, Backward, Eternal, Generic };

std::string_view to_string(Regime r);
std::optional<Regime> parse_regime(std::string_view s);

// Relative to max(1, |alpha(1-m)|, |2 beta|).
inline constexpr double kRegimeTol = 1e-12;

Regime classify_regime(const Parameters& p, double tol = kRegimeTol);

struct HypothesisReport {
  bool existence_ok = false;    // alpha <= beta(n-2)/m and beta > 0
  bool strict_m = false;        // m < (n-2)/n
  bool log_decay_ok = false;    // alpha = 2 beta/(1-m) > 0
  bool power_decay_ok = false;  // 2 beta/(1-m) > max(alpha, 0)
  bool limit_ok = false;        // beta > 0 or alpha = 0
};

HypothesisReport check_hypotheses(const Parameters& p, double tol = kRegimeTol);

struct DerivedConstants {
  std::optional<double> k;  // beta/alpha, absent when alpha = 0
  double rho1 = 0;
  double a0 = 0;
  double b0 = 0;
  double b1 = 0;
  double b2 = 0;
};

DerivedConstants derived(const Parameters& p);

}  // namespace fastdiff
