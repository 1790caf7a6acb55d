#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace fastdiff::cli {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const Parameters& p) {
  return {{"n", p.n}, {"m", p.m}, {"alpha", p.alpha}, {"beta", p.beta}, {"eta", p.eta}};
}

json to_json(const RunConfig& c) {
  json j = to_json(c.params);
  j["command"] = std::string(to_string(c.command));
  j["tol"] = c.tol;
  j["r_max"] = c.r_max;
  j["s_end"] = c.s_end;
  j["r_handoff"] = c.r_handoff;
  j["override"] = c.override_hypotheses;
  j["strict"] = c.strict;
  switch (c.command) {
    case Command::Decay: j["kind"] = c.decay_kind; break;
    case Command::Limit:
      j["m_list"] = c.m_list;
      j["double_limit"] = c.double_limit;
      break;
    case Command::PdeCheck:
      j["regime"] = c.regime ? json(std::string(to_string(*c.regime))) : json(nullptr);
      j["T"] = c.T;
      j["radii"] = c.radii;
      j["times"] = c.times;
      j["h"] = c.h;
      j["dt"] = c.dt;
      j["perturb"] = c.perturb;
      break;
    case Command::Sweep:
      j["n_list"] = c.n_list;
      j["m_list"] = c.m_list;
      j["alpha_list"] = c.alpha_list;
      j["beta_list"] = c.beta_list;
      j["eta_list"] = c.eta_list;
      j["eternal"] = c.eternal;
      break;
    default: break;
  }
  return j;
}

json derived_json(const Parameters& p) {
  const DerivedConstants d = derived(p);
  const HypothesisReport h = check_hypotheses(p);
  return {{"k", d.k ? json(*d.k) : json(nullptr)},
          {"rho1", d.rho1},
          {"a0", d.a0},
          {"b0", d.b0},
          {"b1", d.b1},
          {"b2", d.b2},
          {"regime", std::string(to_string(classify_regime(p)))},
          {"hypotheses",
           {{"existence_ok", h.existence_ok},
            {"strict_m", h.strict_m},
            {"log_decay_ok", h.log_decay_ok},
            {"power_decay_ok", h.power_decay_ok},
            {"limit_ok", h.limit_ok}}}};
}

json to_json(const InvariantReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"name", e.name},
                       {"applicable", e.applicable},
                       {"pass", e.pass},
                       {"worst_margin", e.worst_margin},
                       {"threshold", e.threshold},
                       {"location", e.location},
                       {"value", e.value},
                       {"note", e.note}});
  return {{"overall", r.overall},
          {"applicable", r.applicable_count()},
          {"passed", r.pass_count()},
          {"entries", entries}};
}

namespace {

json trace_json(const std::vector<TracePoint>& t) {
  json a = json::array();
  for (const auto& x : t) a.push_back({x.scale, x.value});
  return a;
}

}  // namespace

json to_json(const DecayEstimate& d) {
  json j{{"kind", std::string(to_string(d.kind))},
         {"trace", trace_json(d.trace)},
         {"raw_last", d.raw_last},
         {"extrapolated", d.extrapolated},
         {"expected", d.expected ? json(*d.expected) : json(nullptr)},
         {"rel_error_vs_expected",
          d.rel_error_vs_expected ? json(*d.rel_error_vs_expected) : json(nullptr)},
         {"converged", d.converged},
         {"last_decade_drift", d.last_decade_drift},
         {"assumption", d.assumption}};
  if (d.kind == DecayKind::LogCorrected) {
    j["fit_c"] = d.fit_c;
    j["window"] = {d.window_lo, d.window_hi};
    j["w_over_s_last"] = d.alt_last;
  } else {
    j["p0"] = d.p0;
    j["proxy"] = trace_json(d.proxy);
    j["proxy_decreasing"] = d.proxy_decreasing;
    j["monotone_direction"] = d.monotone_direction;
  }
  return j;
}

json to_json(const ConvergenceReport& r) {
  return {{"m_values", r.m_values},
          {"sup_errors", r.sup_errors},
          {"argmax", r.argmax},
          {"r_max", r.r_max},
          {"monotone", r.monotone},
          {"strictly_decreasing", r.strictly_decreasing},
          {"final_error", r.final_error}};
}

json to_json(const DoubleLimitReport& r) {
  return {{"n", r.n},
          {"beta", r.beta},
          {"m_values", r.m_values},
          {"a0_measured", r.a0_measured},
          {"a0_exact", r.a0_exact},
          {"gaps", r.gaps},
          {"a0_trend_at_zero", r.a0_trend_at_zero},
          {"log_equation_limit", r.log_equation_limit},
          {"log_equation_raw", r.log_equation_raw},
          {"chart_agreement", r.chart_agreement},
          {"expected", r.expected}};
}

json to_json(const ResidualStats& s) {
  return {{"radii", s.radii},
          {"times", s.times},
          {"h", s.h},
          {"dt", s.dt},
          {"max_rel_residual", s.max_rel_residual},
          {"max_rel_residual_half", s.max_rel_residual_half},
          {"order_estimate", s.order_estimate},
          {"chain_rule_mismatch", s.chain_rule_mismatch},
          {"worst_r", s.worst_r},
          {"worst_t", s.worst_t}};
}

json diagnostics_json(const Solution& sol) {
  json j = json::object();
  for (const auto& [k, v] : sol.diagnostics()) j[k] = v;
  j["c2"] = sol.series().c2;
  j["r_coverage"] = sol.r_max();
  return j;
}

std::string resolve_output(const std::string& path) {
  namespace fs = std::filesystem;
  const char* dir = std::getenv("FASTDIFF_OUTPUT_DIR");
  fs::path p(path);
  if (dir && *dir && p.is_relative()) p = fs::path(dir) / p;
  return p.string();
}

namespace {

std::ofstream open_for_write(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path p(resolve_output(path));
  std::error_code ec;
  if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + p.string() + " for writing");
  return f;
}

}  // namespace

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f = open_for_write(path);
  f << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
    f << '\n';
  }
  if (!f) throw IoError("write failed: " + path);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f = open_for_write(path);
  f << j.dump(2) << '\n';
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace fastdiff::cli
