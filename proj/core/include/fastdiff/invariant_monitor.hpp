#pragma once

#include <span>
#include <string>
#include <vector>

#include "fastdiff/model.hpp"
#include "fastdiff/profile.hpp"
#include "fastdiff/profile_integrator.hpp"

namespace fastdiff {

// pass = !applicable || worst_margin >= threshold. Inequalities use a
// relative margin with threshold -100 tol; identities use margin = -mismatch.
struct InvariantEntry {
  std::string name;
  bool applicable = false;
  bool pass = true;
  double worst_margin = 0.0;
  double threshold = 0.0;
  double location = 0.0;  // radius of the worst margin
  double value = 0.0;     // check-specific attained value (max mismatch, max w_s, ...)
  std::string note;
};

struct InvariantReport {
  std::vector<InvariantEntry> entries;
  bool overall = true;

  void add(InvariantEntry e);
  void merge(const InvariantReport& other);
  const InvariantEntry* find(const std::string& name) const;
  std::size_t applicable_count() const;
  std::size_t pass_count() const;  // among applicable entries
};

inline constexpr double kAcceptFactor = 100.0;

InvariantReport check_pointwise(const Solution& sol);
// Sample-level form; tol[i] is the integrator tolerance that produced samples[i].
InvariantReport check_pointwise(const Parameters& p, std::span<const ProfileSample> samples,
                                std::span<const double> tol);

InvariantReport check_slope_bounds(const Solution& sol);

InvariantReport check_flux_identity(const Solution& sol, double quad_tol = 1e-10,
                                    std::vector<double> radii = {0.5, 1.0, 5.0, 20.0});
InvariantReport check_q_identity(const Solution& sol, double quad_tol = 1e-10,
                                 std::vector<double> radii = {0.5, 1.0, 5.0, 20.0});

// All of the above with default sampling.
InvariantReport check_all(const Solution& sol);

}  // namespace fastdiff
