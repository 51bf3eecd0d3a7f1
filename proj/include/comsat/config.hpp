#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "comsat/params.hpp"
#include "comsat/quadrature.hpp"

namespace comsat {

/// Flat scenario document driving the CLI. Every key has a default; unknown
/// keys are rejected. Defaults marked "not from any measured link budget"
/// (link_gain, bandwidth_hz) are free choices documented in the README.
struct ScenarioConfig {
  SystemParams params;                 // altitude folded into sat_radius_km
  std::vector<double> altitude_list;   // >1 entry fans rate sweeps out to one file each
  double elevation_deg = 15.0;
  std::string variable;                // empty: resolved per command
  std::optional<std::vector<double>> grid;  // absent: per-command default
  long mc_trials = 10000;
  std::uint64_t master_seed = 42;
  std::string output_path;             // empty: per-command default
  std::string output_format = "csv";   // csv | json
  bool baseline = true;
  bool fault_inject_sat_density = false;
  double opt_zeta_lo_deg = 5.0;
  double opt_zeta_hi_deg = 85.0;
  double opt_tol_deg = 0.1;
  QuadratureSpec quad;

  /// Full resolved key/value echo embedded in every output file.
  nlohmann::json resolved() const;
};

ScenarioConfig config_from_json(const nlohmann::json& doc);

/// Loads and validates a config file; an empty path yields the defaults.
/// Throws config_error naming the offending key.
ScenarioConfig load_config(const std::string& path);

}  // namespace comsat
