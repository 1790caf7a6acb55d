#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fastdiff/model.hpp"

namespace fastdiff::cli {

enum class Command { Solve, Verify, Decay, Limit, PdeCheck, Sweep };

std::string_view to_string(Command c);

struct RunConfig {
  Command command = Command::Solve;
  Parameters params;

  double tol = 1e-10;  // r-chart relative; log chart uses 10x, absolute is rel/100
  double r_max = 10.0;
  double s_end = 40.0;
  double r_handoff = 1.0;
  bool override_hypotheses = false;
  bool strict = false;

  std::string decay_kind = "auto";  // auto | log | power

  std::vector<double> m_list;  // limit: m sequence; sweep: m grid
  bool double_limit = false;

  std::optional<Regime> regime;
  double T = 2.0;
  std::vector<double> radii{0.5, 1.0, 2.0, 5.0};
  std::vector<double> times;  // default depends on regime
  double h = 1e-3;
  double dt = 1e-3;
  double perturb = 0.0;  // relative alpha perturbation for the sensitivity check

  std::vector<int> n_list;
  std::vector<double> alpha_list, beta_list, eta_list;
  bool eternal = false;  // sweep: alpha = 2beta/(1-m) at every point
  unsigned jobs = 0;     // 0: hardware concurrency

  std::string out, log_out, trace_out, json;
};

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = 0;  // meaningful when config is empty (help or usage error)
};

// Flags override values from --config (flat `key = value` lines).
ParseResult parse_args(int argc, const char* const* argv);

}  // namespace fastdiff::cli
