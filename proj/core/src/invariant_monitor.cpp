#include "fastdiff/invariant_monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fastdiff/errors.hpp"
#include "fastdiff/quadrature.hpp"

namespace fastdiff {

void InvariantReport::add(InvariantEntry e) {
  if (!e.applicable) e.pass = true;
  overall = overall && e.pass;
  entries.push_back(std::move(e));
}

void InvariantReport::merge(const InvariantReport& other) {
  for (const auto& e : other.entries) add(e);
}

const InvariantEntry* InvariantReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::size_t InvariantReport::applicable_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.applicable; }));
}

std::size_t InvariantReport::pass_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const auto& e) { return e.applicable && e.pass; }));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Running minimum of a margin, each sample judged against its own threshold.
struct MarginTracker {
  InvariantEntry e;
  double worst_excess = kInf;

  MarginTracker(std::string name, bool applicable, std::string note = {}) {
    e.name = std::move(name);
    e.applicable = applicable;
    e.note = std::move(note);
    e.worst_margin = kInf;
  }
  void see(double margin, double threshold, double r) {
    const double excess = std::isnan(margin) ? -kInf : margin - threshold;
    if (excess < worst_excess) {
      worst_excess = excess;
      e.worst_margin = margin;
      e.threshold = threshold;
      e.location = r;
    }
  }
  InvariantEntry done() {
    if (e.applicable) e.pass = worst_excess >= 0.0;
    if (!std::isfinite(e.worst_margin) && worst_excess == kInf) e.worst_margin = 0.0;
    return e;
  }
};

std::vector<double> knot_tolerances(const Solution& sol, const std::vector<ProfileSample>& k) {
  std::vector<double> tol;
  tol.reserve(k.size());
  for (const auto& x : k) tol.push_back(sol.tolerance_at(x.r));
  return tol;
}

InvariantEntry not_applicable(std::string name, std::string note) {
  InvariantEntry e;
  e.name = std::move(name);
  e.applicable = false;
  e.note = std::move(note);
  return e;
}

}  // namespace

InvariantReport check_pointwise(const Solution& sol) {
  const auto k = sol.knots();
  const auto tol = knot_tolerances(sol, k);
  return check_pointwise(sol.params(), k, tol);
}

InvariantReport check_pointwise(const Parameters& p, std::span<const ProfileSample> samples,
                                std::span<const double> tol) {
  if (samples.size() != tol.size()) throw InvalidParameters("samples/tolerances size mismatch");
  const HypothesisReport hyp = check_hypotheses(p);
  const DerivedConstants d = derived(p);
  const bool has_k = d.k.has_value();
  const bool h_applies = p.alpha > 0.0 && eternal_alpha(p.m, p.beta) >= p.alpha;
  const std::string k_note = has_k ? (hyp.existence_ok ? "" : "existence range violated")
                                   : "alpha = 0: k absent";

  MarginTracker h1("h1_positive", has_k && hyp.existence_ok, k_note);
  MarginTracker sign("dv_sign", true, p.alpha == 0.0 ? "alpha = 0: checks v' == 0" : "");
  MarginTracker w1("w1_increasing", has_k && hyp.existence_ok, k_note);
  MarginTracker h("h_positive", h_applies, h_applies ? "" : "needs 2beta/(1-m) >= alpha > 0");
  MarginTracker wr("w_increasing", h_applies, h_applies ? "" : "needs 2beta/(1-m) >= alpha > 0");
  MarginTracker cap("v_le_eta", p.alpha > 0.0, p.alpha > 0.0 ? "" : "needs alpha > 0");

  const double sgn = p.alpha > 0.0 ? 1.0 : (p.alpha < 0.0 ? -1.0 : 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& x = samples[i];
    if (!(x.r > 0.0)) continue;
    const double eps = -kAcceptFactor * tol[i];
    const double slope = x.r * x.dv / x.v;  // r v'/v
    if (has_k) {
      const double ratio = 1.0 + *d.k * slope;  // h1 / v
      h1.see(ratio, eps, x.r);
      w1.see(2.0 * ratio, eps, x.r);
    }
    sign.see(sgn != 0.0 ? -sgn * slope : -std::abs(slope), eps, x.r);
    h.see(1.0 + 0.5 * (1.0 - p.m) * slope, eps, x.r);
    wr.see(2.0 + (1.0 - p.m) * slope, eps, x.r);
    cap.see((p.eta - x.v) / p.eta, eps, x.r);
  }
  InvariantReport rep;
  for (auto* t : {&h1, &sign, &w1, &h, &wr, &cap}) rep.add(t->done());
  return rep;
}

InvariantReport check_slope_bounds(const Solution& sol) {
  const Parameters& p = sol.params();
  const HypothesisReport hyp = check_hypotheses(p);
  InvariantReport rep;
  const char* names[] = {"ratio_bound", "p_bound", "ws_positive_bounded", "w_unbounded",
                         "ratio_bound_sharp"};
  if (!(hyp.log_decay_ok && hyp.strict_m)) {
    for (const char* n : names)
      rep.add(not_applicable(n, "needs alpha = 2beta/(1-m) > 0 and m < (n-2)/n"));
    return rep;
  }
  const DerivedConstants d = derived(p);
  const double m = p.m, om = 1.0 - m;
  const double ratio_cap = om * d.b1 / m;
  const double sharp_cap = om * std::max(2.0 * m / om, std::sqrt(d.b1)) / m;

  MarginTracker ratio("ratio_bound", d.b0 >= 0.0, d.b0 >= 0.0 ? "" : "b0 < 0 branch");
  MarginTracker pb("p_bound", d.b0 < 0.0, d.b0 < 0.0 ? "" : "b0 >= 0 branch");
  MarginTracker sharp("ratio_bound_sharp", true,
                      "r w_r/w <= (1-m) max(2m/(1-m), sqrt(b1))/m; informative");
  MarginTracker wsb("ws_positive_bounded", true);
  double max_ratio = -kInf, max_p = -kInf;

  const auto knots = sol.knots();
  for (const auto& x : knots) {
    if (!(x.r > 0.0)) continue;
    const double eps = -kAcceptFactor * sol.tolerance_at(x.r);
    const double rr = 2.0 + om * x.r * x.dv / x.v;  // r w_r / w = w_s / w
    ratio.see((ratio_cap - rr) / std::max(1.0, ratio_cap), eps, x.r);
    sharp.see((sharp_cap - rr) / std::max(1.0, sharp_cap), eps, x.r);
    const double pv = m / om * rr;
    pb.see((d.b2 - pv) / std::max(1.0, d.b2), eps, x.r);
    max_ratio = std::max(max_ratio, rr);
    max_p = std::max(max_p, pv);
  }
  ratio.e.value = max_ratio;
  sharp.e.value = max_ratio;
  pb.e.value = max_p;

  // (iii) on s >= 0 in the log chart: positivity, and no growth of w_s in the
  // second half of the range beyond 10% of the first half's maximum.
  const auto& ls = sol.logprofile().samples();
  const double s_mid = 0.5 * sol.logprofile().s_end();
  double head = -kInf, tail = -kInf, attained = -kInf;
  for (const auto& x : ls) {
    if (x.s < 0.0) continue;
    wsb.see(x.ws / x.w, -kAcceptFactor * sol.logprofile().tolerance(), std::exp(x.s));
    if (x.s <= s_mid)
      head = std::max(head, x.ws);
    else
      tail = std::max(tail, x.ws);
    attained = std::max(attained, x.ws);
  }
  InvariantEntry iii = wsb.done();
  iii.value = attained;
  if (tail > 1.1 * head) {
    iii.pass = false;
    iii.note = "w_s still growing in the second half of the range";
  }

  InvariantEntry iv;
  iv.name = "w_unbounded";
  const double s_end = sol.logprofile().s_end();
  iv.applicable = s_end >= 40.0 - 1e-9;
  if (iv.applicable) {
    const double w0 = sol.logprofile().evaluate(std::max(0.0, sol.logprofile().s_start())).w;
    const double wend = ls.back().w;
    iv.worst_margin = wend / (10.0 * w0) - 1.0;
    iv.threshold = 0.0;
    iv.location = std::exp(s_end);
    iv.value = wend / w0;
    iv.pass = iv.worst_margin >= 0.0;
  } else {
    iv.note = "needs s_end >= 40";
  }

  rep.add(ratio.done());
  rep.add(pb.done());
  rep.add(iii);
  rep.add(iv);
  rep.add(sharp.done());
  return rep;
}

namespace {

std::vector<double> knot_radii(const Solution& sol) {
  std::vector<double> r;
  for (const auto& k : sol.knots()) r.push_back(k.r);
  return r;
}

}  // namespace

InvariantReport check_flux_identity(const Solution& sol, double quad_tol,
                                    std::vector<double> radii) {
  const Parameters& p = sol.params();
  const double n = p.n;
  const auto breaks = knot_radii(sol);
  auto integrand = [&](double rho) { return std::pow(rho, n - 1.0) * sol.evaluate_exact(rho).v; };

  MarginTracker t("flux_identity", true);
  double worst = 0.0;
  double prev_r = 0.0, acc = 0.0;
  std::sort(radii.begin(), radii.end());
  for (double r : radii) {
    if (!(r > 0.0) || !sol.covers(r)) continue;
    acc += integrate_piecewise(integrand, breaks, prev_r, r, quad_tol, false).value;
    prev_r = r;
    const PointValue pv = sol.evaluate_exact(r);
    const double lhs = (n - 1.0) * std::pow(pv.v, p.m - 1.0) * pv.dv;
    const double t1 = -p.beta * r * pv.v;
    const double t2 = (n * p.beta - p.alpha) / std::pow(r, n - 1.0) * acc;
    const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), 1e-300});
    const double mismatch = std::abs(lhs - (t1 + t2)) / scale;
    worst = std::max(worst, mismatch);
    t.see(-mismatch, -kAcceptFactor * sol.tolerance_at(r), r);
  }
  InvariantEntry e = t.done();
  e.value = worst;
  InvariantReport rep;
  rep.add(e);
  return rep;
}

InvariantReport check_q_identity(const Solution& sol, double quad_tol, std::vector<double> radii) {
  const Parameters& p = sol.params();
  const HypothesisReport hyp = check_hypotheses(p);
  InvariantReport rep;
  if (!(hyp.log_decay_ok && hyp.strict_m)) {
    rep.add(not_applicable("q_identity", "needs alpha = 2beta/(1-m) > 0 and m < (n-2)/n"));
    rep.add(not_applicable("q_identity_origin", "needs alpha = 2beta/(1-m) > 0"));
    return rep;
  }
  const DerivedConstants d = derived(p);
  const double n = p.n, m = p.m, om = 1.0 - m;
  const double lhs_pow = (n - 2.0 - n * m) / om;  // b0 + 2m/(1-m)
  const double e = lhs_pow - 1.0;
  // With w = r^2 v^{1-m} and q = r w_r = w (2 + (1-m) r v'/v):
  //   r^{b0} q w^{(2m-1)/(1-m)}           = r^{lhs_pow} v^m P
  //   rho^{b0-1} w^{m/(1-m)} (a0 - q)     = rho^e v^m (a0 - rho^2 v^{1-m} P)
  auto P = [om](double r, const PointValue& pv) { return 2.0 + om * r * pv.dv / pv.v; };
  auto lhs = [&](double r) {
    const PointValue pv = sol.evaluate_exact(r);
    return std::pow(r, lhs_pow) * std::pow(pv.v, m) * P(r, pv);
  };
  auto integrand = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    const PointValue pv = sol.evaluate_exact(rho);
    const double q = rho * rho * std::pow(pv.v, om) * P(rho, pv);
    return std::pow(rho, e) * std::pow(pv.v, m) * (d.a0 - q);
  };
  const auto breaks = knot_radii(sol);
  const double coef = p.beta / (n - 1.0);

  MarginTracker t("q_identity", true);
  double worst = 0.0, prev_r = 0.0, acc = 0.0, acc_l1 = 0.0;
  std::sort(radii.begin(), radii.end());
  for (double r : radii) {
    if (!(r > 0.0) || !sol.covers(r)) continue;
    const QuadratureResult qr =
        integrate_piecewise(integrand, breaks, prev_r, r, quad_tol, prev_r == 0.0);
    acc += qr.value;
    acc_l1 += qr.l1;
    prev_r = r;
    const double l = lhs(r);
    const double rhs = coef * acc;
    const double scale = std::max({std::abs(l), coef * acc_l1, 1e-300});
    const double mismatch = std::abs(l - rhs) / scale;
    worst = std::max(worst, mismatch);
    t.see(-mismatch, -kAcceptFactor * sol.tolerance_at(r), r);
  }
  InvariantEntry ent = t.done();
  ent.value = worst;
  rep.add(ent);

  InvariantEntry o;
  o.name = "q_identity_origin";
  o.applicable = true;
  const double l3 = std::abs(lhs(1e-3)), l4 = std::abs(lhs(1e-4));
  o.worst_margin = (l3 - l4) / std::max(l3, 1e-300);
  o.threshold = 0.0;
  o.location = 1e-4;
  o.value = l4;
  o.pass = l4 < l3;
  rep.add(o);
  return rep;
}

InvariantReport check_all(const Solution& sol) {
  InvariantReport rep = check_pointwise(sol);
  rep.merge(check_slope_bounds(sol));
  rep.merge(check_flux_identity(sol));
  rep.merge(check_q_identity(sol));
  return rep;
}

}  // namespace fastdiff
