#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cli/options.hpp"
#include "fastdiff/asymptotics.hpp"
#include "fastdiff/invariant_monitor.hpp"
#include "fastdiff/pde_verifier.hpp"
#include "fastdiff/singular_limit.hpp"

namespace fastdiff::cli {

using nlohmann::json;

json to_json(const RunConfig& c);
json to_json(const Parameters& p);
json derived_json(const Parameters& p);
json to_json(const InvariantReport& r);
json to_json(const DecayEstimate& d);
json to_json(const ConvergenceReport& r);
json to_json(const DoubleLimitReport& r);
json to_json(const ResidualStats& s);
json diagnostics_json(const Solution& sol);

// 17 significant digits.
std::string fmt(double x);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative paths are resolved against $FASTDIFF_OUTPUT_DIR when it is set.
std::string resolve_output(const std::string& path);

// header is the first line; rows are already formatted.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows);
void write_json(const std::string& path, const json& j);

}  // namespace fastdiff::cli
