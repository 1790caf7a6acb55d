#include "cli/options.hpp"

#include <CLI11.hpp>
#include <iostream>

namespace fastdiff::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Verify: return "verify";
    case Command::Decay: return "decay";
    case Command::Limit: return "limit";
    case Command::PdeCheck: return "pde-check";
    case Command::Sweep: return "sweep";
  }
  return "solve";
}

ParseResult parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Radial self-similar profiles of the fast diffusion equation", "fastdiff"};
  app.set_config("--config", "", "Flat key = value file; flags override it");
  app.set_help_flag("--help", "Print this help and exit");
  app.fallthrough();
  app.require_subcommand(1, 1);

  Parameters& p = cfg.params;
  app.add_option("--n", p.n, "Dimension (>= 3)")->capture_default_str();
  app.add_option("--m", p.m, "Exponent, 0 < m <= (n-2)/n")->capture_default_str();
  app.add_option("--alpha", p.alpha, "alpha")->capture_default_str();
  app.add_option("--beta", p.beta, "beta")->capture_default_str();
  app.add_option("--eta", p.eta, "v(0)")->capture_default_str();
  app.add_option("--tol", cfg.tol, "r-chart relative tolerance (log chart uses 10x)")
      ->capture_default_str();
  app.add_option("--r-max", cfg.r_max, "End of the r-chart (limit: comparison radius)")
      ->capture_default_str();
  app.add_option("--s-end", cfg.s_end, "End of the log chart, s = log r")->capture_default_str();
  app.add_option("--r-handoff", cfg.r_handoff, "Chart handoff radius")->capture_default_str();
  app.add_flag("--override", cfg.override_hypotheses, "Solve outside the existence range");
  app.add_flag("--strict", cfg.strict, "Exit 3 on NotConverged or failed invariants");
  app.add_option("--out", cfg.out, "CSV output (profile, trace or sweep table)");
  app.add_option("--log-out", cfg.log_out, "Log-chart CSV output (s,w,ws)");
  app.add_option("--trace-out", cfg.trace_out, "Decay/limit trace CSV (scale,value)");
  app.add_option("--json", cfg.json, "JSON report path");

  app.add_option("--kind", cfg.decay_kind, "decay: auto, log or power")
      ->check(CLI::IsMember({"auto", "log", "power"}))
      ->capture_default_str();
  app.add_option("--m-list", cfg.m_list, "limit: decreasing m values; sweep: m grid")
      ->delimiter(',');
  app.add_flag("--double-limit", cfg.double_limit, "limit: also run the m -> 0 double limit");

  std::string regime;
  app.add_option("--regime", regime, "pde-check: forward, backward or eternal")
      ->check(CLI::IsMember({"forward", "backward", "eternal"}));
  app.add_option("--T", cfg.T, "pde-check: backward horizon")->capture_default_str();
  app.add_option("--radii", cfg.radii, "pde-check: radii")->delimiter(',');
  app.add_option("--times", cfg.times, "pde-check: times")->delimiter(',');
  app.add_option("--h", cfg.h, "pde-check: spatial step")->capture_default_str();
  app.add_option("--dt", cfg.dt, "pde-check: time step")->capture_default_str();
  app.add_option("--perturb", cfg.perturb, "pde-check: relative alpha perturbation");

  app.add_option("--n-list", cfg.n_list, "sweep: n grid")->delimiter(',');
  app.add_option("--alpha-list", cfg.alpha_list, "sweep: alpha grid")->delimiter(',');
  app.add_option("--beta-list", cfg.beta_list, "sweep: beta grid")->delimiter(',');
  app.add_option("--eta-list", cfg.eta_list, "sweep: eta grid")->delimiter(',');
  app.add_flag("--eternal", cfg.eternal, "sweep: set alpha = 2beta/(1-m) at each point");
  app.add_option("--jobs", cfg.jobs, "sweep: worker threads (0 = all cores)");

  struct Sub {
    const char* name;
    Command cmd;
    const char* help;
  };
  const Sub subs[] = {
      {"solve", Command::Solve, "Integrate a profile and write it"},
      {"verify", Command::Verify, "Check invariants and identities along a profile"},
      {"decay", Command::Decay, "Estimate the large-r decay constant"},
      {"limit", Command::Limit, "Compare against the m = 0 log-diffusion profile"},
      {"pde-check", Command::PdeCheck, "Finite-difference residual of the self-similar solution"},
      {"sweep", Command::Sweep, "Run a Cartesian parameter grid"},
  };
  for (const auto& s : subs) {
    Command c = s.cmd;
    app.add_subcommand(s.name, s.help)->callback([&cfg, c] { cfg.command = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return {std::nullopt, code == 0 ? 0 : 1};
  }
  if (!regime.empty()) cfg.regime = parse_regime(regime);
  return {cfg, 0};
}

}  // namespace fastdiff::cli
