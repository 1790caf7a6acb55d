#include "cli/commands.hpp"

#include <atomic>
#include <iostream>
#include <memory>
#include <thread>

#include "cli/report.hpp"
#include "fastdiff/errors.hpp"

namespace fastdiff::cli {
namespace {

SolveConfig solve_config(const RunConfig& c) {
  SolveConfig s;
  s.r_tol = {c.tol, c.tol / 100.0};
  s.s_tol = {10.0 * c.tol, c.tol / 10.0};
  s.r_max = c.r_max;
  s.s_end = c.s_end;
  s.r_handoff = c.r_handoff;
  s.override_hypotheses = c.override_hypotheses;
  return s;
}

int cmd_solve(const RunConfig& c, json& rep, std::ostream& out) {
  const Solution sol = solve_profile(c.params, solve_config(c));
  rep["diagnostics"] = diagnostics_json(sol);
  if (!c.out.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : sol.profile().samples()) rows.push_back({fmt(s.r), fmt(s.v), fmt(s.dv)});
    write_csv(c.out, "r,v,dv", rows);
  }
  if (!c.log_out.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : sol.logprofile().samples())
      rows.push_back({fmt(s.s), fmt(s.w), fmt(s.ws)});
    write_csv(c.log_out, "s,w,ws", rows);
  }
  out << "r-chart: " << sol.profile().samples().size() << " samples to r = "
      << fmt(sol.profile().r_end()) << "\nlog chart: " << sol.logprofile().samples().size()
      << " samples to s = " << fmt(sol.logprofile().s_end())
      << "\noverlap error: " << fmt(sol.overlap_error()) << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& c, json& rep, std::ostream& out) {
  const Solution sol = solve_profile(c.params, solve_config(c));
  rep["diagnostics"] = diagnostics_json(sol);
  const InvariantReport inv = check_all(sol);
  rep["invariants"] = to_json(inv);
  for (const auto& e : inv.entries) {
    out << (e.applicable ? (e.pass ? "PASS " : "FAIL ") : "n/a  ") << e.name;
    if (e.applicable) out << "  margin " << fmt(e.worst_margin) << " at r = " << fmt(e.location);
    out << '\n';
  }
  out << "overall: " << (inv.overall ? "pass" : "fail") << '\n';
  return c.strict && !inv.overall ? kExitNumerical : kExitOk;
}

int cmd_decay(const RunConfig& c, json& rep, std::ostream& out) {
  const HypothesisReport h = check_hypotheses(c.params);
  std::string kind = c.decay_kind;
  if (kind == "auto") {
    if (h.log_decay_ok)
      kind = "log";
    else if (h.power_decay_ok)
      kind = "power";
    else
      throw HypothesisViolation("neither decay law applies to these parameters");
  }
  const Solution sol = solve_profile(c.params, solve_config(c));
  rep["diagnostics"] = diagnostics_json(sol);
  const DecayEstimate d = kind == "log" ? estimate_log_decay(sol) : estimate_power_decay(sol);
  rep["decay"] = to_json(d);
  if (!c.trace_out.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& t : d.trace) rows.push_back({fmt(t.scale), fmt(t.value)});
    write_csv(c.trace_out, "scale,value", rows);
  }
  out << "kind: " << to_string(d.kind) << "\nextrapolated: " << fmt(d.extrapolated)
      << "\nraw_last: " << fmt(d.raw_last) << '\n';
  if (d.expected)
    out << "expected: " << fmt(*d.expected) << "\nrel_error: " << fmt(*d.rel_error_vs_expected)
        << '\n';
  out << "converged: " << (d.converged ? "yes" : "no") << '\n';
  return c.strict && !d.converged ? kExitNumerical : kExitOk;
}

int cmd_limit(const RunConfig& c, json& rep, std::ostream& out) {
  const std::vector<double> ms = c.m_list.empty() ? kDefaultLimitMs : c.m_list;
  const Parameters& p = c.params;
  const ConvergenceReport cr =
      limit_convergence(p.n, p.alpha, p.beta, p.eta, ms, c.r_max, {c.tol, c.tol / 100.0});
  json lim = {{"convergence", to_json(cr)}};
  for (std::size_t i = 0; i < ms.size(); ++i)
    out << "m = " << fmt(ms[i]) << "  sup error " << fmt(cr.sup_errors[i]) << '\n';
  if (!c.trace_out.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < ms.size(); ++i) rows.push_back({fmt(ms[i]), fmt(cr.sup_errors[i])});
    write_csv(c.trace_out, "scale,value", rows);
  }
  if (c.double_limit) {
    const DoubleLimitReport dl = double_limit(p.n, p.beta, p.eta, ms, c.s_end);
    lim["double_limit"] = to_json(dl);
    out << "a0 trend at m = 0: " << fmt(dl.a0_trend_at_zero)
        << "\nlog-equation limit: " << fmt(dl.log_equation_limit)
        << "\nexpected: " << fmt(dl.expected) << '\n';
  }
  rep["limit"] = lim;
  return c.strict && !cr.monotone ? kExitNumerical : kExitOk;
}

std::vector<double> default_times(Regime r, double T) {
  switch (r) {
    case Regime::Eternal: return {-0.2, 0.0, 0.2};
    case Regime::Backward: return {T - 1.2, T - 1.0, T - 0.8};
    default: return {0.8, 1.0, 1.2};
  }
}

int cmd_pde(const RunConfig& c, json& rep, std::ostream& out) {
  const Regime regime = c.regime ? *c.regime : classify_regime(c.params);
  const std::vector<double> times = c.times.empty() ? default_times(regime, c.T) : c.times;
  auto sol = std::make_shared<const Solution>(solve_profile(c.params, solve_config(c)));
  rep["diagnostics"] = diagnostics_json(*sol);
  const SelfSimilarSolution ss = build_selfsimilar(sol, regime, c.T);
  const ResidualStats st = pde_residual(ss, c.radii, times, c.h, c.dt);
  json pde = to_json(st);
  pde["regime"] = std::string(to_string(regime));
  out << "regime: " << to_string(regime) << "\nmax relative residual: "
      << fmt(st.max_rel_residual) << "\norder: " << fmt(st.order_estimate) << '\n';
  if (c.perturb != 0.0) {
    Parameters q = c.params;
    q.alpha *= 1.0 + c.perturb;
    auto sol2 = std::make_shared<const Solution>(solve_profile(q, solve_config(c)));
    const SelfSimilarSolution ss2 = build_selfsimilar(sol2, regime, c.T, false);
    const ResidualStats st2 = pde_residual(ss2, c.radii, times, c.h, c.dt);
    pde["perturbed"] = to_json(st2);
    pde["perturbed_alpha"] = q.alpha;
    pde["sensitivity_ratio"] = st2.max_rel_residual / st.max_rel_residual;
    out << "perturbed residual: " << fmt(st2.max_rel_residual) << '\n';
  }
  rep["pde"] = pde;
  return kExitOk;
}

struct SweepRow {
  Parameters p;
  std::string status = "ok";
  std::string message;
  std::optional<double> a0_expected, a0_measured;
  std::size_t passed = 0, applicable = 0;
};

SweepRow sweep_point(const RunConfig& c, Parameters p) {
  SweepRow row;
  row.p = p;
  try {
    validate(p);
    const Solution sol = solve_profile(p, solve_config(c));
    const InvariantReport inv = check_all(sol);
    row.passed = inv.pass_count();
    row.applicable = inv.applicable_count();
    const HypothesisReport h = check_hypotheses(p);
    if (h.log_decay_ok && h.strict_m) {
      row.a0_expected = expected_log_constant(p);
      row.a0_measured = estimate_log_decay(sol).extrapolated;
    }
  } catch (const InvalidParameters& e) {
    row.status = "invalid";
    row.message = e.what();
  } catch (const HypothesisViolation& e) {
    row.status = "hypothesis";
    row.message = e.what();
  } catch (const Error& e) {
    row.status = "numerical";
    row.message = e.what();
  }
  return row;
}

int cmd_sweep(const RunConfig& c, json& rep, std::ostream& out) {
  const Parameters& base = c.params;
  const std::vector<int> ns = c.n_list.empty() ? std::vector<int>{base.n} : c.n_list;
  const std::vector<double> ms = c.m_list.empty() ? std::vector<double>{base.m} : c.m_list;
  const std::vector<double> as =
      c.alpha_list.empty() ? std::vector<double>{base.alpha} : c.alpha_list;
  const std::vector<double> bs = c.beta_list.empty() ? std::vector<double>{base.beta} : c.beta_list;
  const std::vector<double> es = c.eta_list.empty() ? std::vector<double>{base.eta} : c.eta_list;

  std::vector<Parameters> grid;
  for (int n : ns)
    for (double m : ms)
      for (double a : (c.eternal ? std::vector<double>{0.0} : as))
        for (double b : bs)
          for (double e : es) grid.push_back({n, m, c.eternal ? eternal_alpha(m, b) : a, b, e});

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  unsigned workers = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) rows[i] = sweep_point(c, grid[i]);
    });
  for (auto& t : pool) t.join();

  const std::string header =
      "index,n,m,alpha,beta,eta,regime,status,a0_expected,a0_measured,invariants_passed,"
      "invariants_applicable";
  std::vector<std::vector<std::string>> csv;
  json jrows = json::array(), jderived = json::array();
  auto opt = [](const std::optional<double>& x) { return x ? fmt(*x) : std::string(); };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    const std::string regime(to_string(classify_regime(r.p)));
    csv.push_back({std::to_string(i), std::to_string(r.p.n), fmt(r.p.m), fmt(r.p.alpha),
                   fmt(r.p.beta), fmt(r.p.eta), regime, r.status, opt(r.a0_expected),
                   opt(r.a0_measured), std::to_string(r.passed), std::to_string(r.applicable)});
    json jr = to_json(r.p);
    jr["index"] = i;
    jr["regime"] = regime;
    jr["status"] = r.status;
    jr["message"] = r.message;
    jr["a0_expected"] = r.a0_expected ? json(*r.a0_expected) : json(nullptr);
    jr["a0_measured"] = r.a0_measured ? json(*r.a0_measured) : json(nullptr);
    jr["invariants_passed"] = r.passed;
    jr["invariants_applicable"] = r.applicable;
    jrows.push_back(jr);
    json jd = r.status == "invalid" ? json(nullptr) : derived_json(r.p);
    jderived.push_back({{"index", i}, {"derived", jd}});
    out << i << ' ' << regime << ' ' << r.status << ' '
        << r.passed << '/' << r.applicable << '\n';
  }
  if (!c.out.empty()) write_csv(c.out, header, csv);
  rep["derived"] = {{"points", jderived}};
  rep["diagnostics"] = {{"points", grid.size()}, {"rows", jrows}};
  bool any_numerical = false;
  for (const auto& r : rows) any_numerical = any_numerical || r.status == "numerical";
  return c.strict && any_numerical ? kExitNumerical : kExitOk;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  json rep;
  rep["config"] = to_json(c);
  int code = kExitOk;
  json failure;
  try {
    if (c.command != Command::Sweep) {
      validate(c.params);
      rep["derived"] = derived_json(c.params);
    }
    switch (c.command) {
      case Command::Solve: code = cmd_solve(c, rep, out); break;
      case Command::Verify: code = cmd_verify(c, rep, out); break;
      case Command::Decay: code = cmd_decay(c, rep, out); break;
      case Command::Limit: code = cmd_limit(c, rep, out); break;
      case Command::PdeCheck: code = cmd_pde(c, rep, out); break;
      case Command::Sweep: code = cmd_sweep(c, rep, out); break;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidParameters& e) {
    code = kExitHypothesis;
    failure = {{"kind", "InvalidParameters"}, {"message", e.what()}};
  } catch (const HypothesisViolation& e) {
    code = kExitHypothesis;
    failure = {{"kind", dynamic_cast<const EndpointRefused*>(&e) ? "EndpointRefused"
                                                                  : "HypothesisViolation"},
               {"message", e.what()}};
  } catch (const RegimeMismatch& e) {
    code = kExitHypothesis;
    failure = {{"kind", "RegimeMismatch"}, {"message", e.what()}};
  } catch (const NumericalFailure& e) {
    code = kExitNumerical;
    const char* kind = dynamic_cast<const PositivityLoss*>(&e)   ? "PositivityLoss"
                       : dynamic_cast<const StepUnderflow*>(&e) ? "StepUnderflow"
                                                                : "QuadratureFailure";
    failure = {{"kind", kind}, {"message", e.what()}, {"radius", e.radius()}};
  } catch (const OutOfRange& e) {
    code = kExitNumerical;
    failure = {{"kind", "OutOfRange"}, {"message", e.what()}};
  }
  if (!failure.is_null()) {
    err << "error: " << failure["message"].get<std::string>() << '\n';
    rep["diagnostics"]["error"] = failure;
  }
  if (code == kExitNumerical && failure.is_null()) rep["diagnostics"]["strict_failure"] = true;
  if (!c.json.empty()) {
    try {
      write_json(c.json, rep);
    } catch (const IoError& e) {
      err << "error: " << e.what() << '\n';
      return kExitIo;
    }
  }
  return code;
}

int cli_main(int argc, const char* const* argv) {
  const ParseResult pr = parse_args(argc, argv);
  if (!pr.config) return pr.exit_code;
  return run(*pr.config, std::cout, std::cerr);
}

}  // namespace fastdiff::cli
