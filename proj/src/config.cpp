#include "comsat/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "comsat/errors.hpp"

namespace comsat {

namespace {

using nlohmann::json;

double require_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw config_error("config key '" + key + "' must be a number");
  return v.get<double>();
}

bool require_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw config_error("config key '" + key + "' must be a boolean");
  return v.get<bool>();
}

std::string require_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw config_error("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> require_number_array(const json& v, const std::string& key) {
  if (!v.is_array()) throw config_error("config key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw config_error("config key '" + key + "' must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "earth_radius_km",  "altitude_km",     "sat_density_per_km2", "ut_density_per_km2",
      "pathloss_exponent", "link_gain",      "bandwidth_hz",        "elevation_deg",
      "variable",          "grid",           "mc_trials",           "master_seed",
      "output_path",       "output_format",  "baseline",            "fault_inject_sat_density",
      "opt_zeta_lo_deg",   "opt_zeta_hi_deg", "opt_tol_deg",
  };
  return keys;
}

}  // namespace

ScenarioConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw config_error("config document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (known_keys().count(key) == 0) throw config_error("unknown config key '" + key + "'");
  }

  ScenarioConfig cfg;
  double earth_radius = cfg.params.earth_radius_km;
  std::vector<double> altitudes = {cfg.params.altitude_km()};

  if (doc.contains("earth_radius_km")) earth_radius = require_number(doc["earth_radius_km"], "earth_radius_km");
  if (doc.contains("altitude_km")) {
    const auto& v = doc["altitude_km"];
    altitudes = v.is_array() ? require_number_array(v, "altitude_km")
                             : std::vector<double>{require_number(v, "altitude_km")};
    if (altitudes.empty()) throw config_error("config key 'altitude_km' must not be an empty array");
  }
  cfg.params.earth_radius_km = earth_radius;
  cfg.params.sat_radius_km = earth_radius + altitudes.front();
  cfg.altitude_list = altitudes;

  if (doc.contains("sat_density_per_km2"))
    cfg.params.sat_density_per_km2 = require_number(doc["sat_density_per_km2"], "sat_density_per_km2");
  if (doc.contains("ut_density_per_km2"))
    cfg.params.ut_density_per_km2 = require_number(doc["ut_density_per_km2"], "ut_density_per_km2");
  if (doc.contains("pathloss_exponent"))
    cfg.params.pathloss_exponent = require_number(doc["pathloss_exponent"], "pathloss_exponent");
  if (doc.contains("link_gain")) cfg.params.link_gain = require_number(doc["link_gain"], "link_gain");
  if (doc.contains("bandwidth_hz")) cfg.params.bandwidth_hz = require_number(doc["bandwidth_hz"], "bandwidth_hz");

  try {
    cfg.params.validate();
    for (const double alt : cfg.altitude_list) {
      if (!(alt > 0.0)) throw std::invalid_argument("altitude_km must be positive");
    }
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("invalid config value: ") + e.what());
  }

  if (doc.contains("elevation_deg")) cfg.elevation_deg = require_number(doc["elevation_deg"], "elevation_deg");
  if (!(cfg.elevation_deg > 0.0 && cfg.elevation_deg <= 90.0)) {
    throw config_error("invalid config value: elevation_deg must lie in (0, 90]");
  }

  if (doc.contains("variable")) cfg.variable = require_string(doc["variable"], "variable");
  if (doc.contains("grid")) {
    cfg.grid = require_number_array(doc["grid"], "grid");
    if (cfg.grid->empty()) throw config_error("invalid config value: grid must not be empty");
    for (std::size_t i = 1; i < cfg.grid->size(); ++i) {
      if (!((*cfg.grid)[i] > (*cfg.grid)[i - 1])) {
        throw config_error("invalid config value: grid must be strictly increasing");
      }
    }
  }

  if (doc.contains("mc_trials")) {
    const double v = require_number(doc["mc_trials"], "mc_trials");
    if (v < 0 || v != std::floor(v)) throw config_error("invalid config value: mc_trials must be a nonnegative integer");
    cfg.mc_trials = static_cast<long>(v);
  }
  if (cfg.mc_trials > 0 && cfg.mc_trials < 100) {
    throw config_error("invalid config value: mc_trials must be 0 (analytic only) or at least 100");
  }

  if (doc.contains("master_seed")) {
    const auto& v = doc["master_seed"];
    if (!v.is_number_unsigned() && !v.is_number_integer()) {
      throw config_error("config key 'master_seed' must be an unsigned integer");
    }
    if (v.is_number_integer() && v.get<long long>() < 0) {
      throw config_error("invalid config value: master_seed must be nonnegative");
    }
    cfg.master_seed = v.get<std::uint64_t>();
  }

  if (doc.contains("output_path")) cfg.output_path = require_string(doc["output_path"], "output_path");
  if (doc.contains("output_format")) cfg.output_format = require_string(doc["output_format"], "output_format");
  if (cfg.output_format != "csv" && cfg.output_format != "json") {
    throw config_error("invalid config value: output_format must be 'csv' or 'json'");
  }

  if (doc.contains("baseline")) cfg.baseline = require_bool(doc["baseline"], "baseline");
  if (doc.contains("fault_inject_sat_density"))
    cfg.fault_inject_sat_density = require_bool(doc["fault_inject_sat_density"], "fault_inject_sat_density");

  if (doc.contains("opt_zeta_lo_deg")) cfg.opt_zeta_lo_deg = require_number(doc["opt_zeta_lo_deg"], "opt_zeta_lo_deg");
  if (doc.contains("opt_zeta_hi_deg")) cfg.opt_zeta_hi_deg = require_number(doc["opt_zeta_hi_deg"], "opt_zeta_hi_deg");
  if (doc.contains("opt_tol_deg")) cfg.opt_tol_deg = require_number(doc["opt_tol_deg"], "opt_tol_deg");
  if (!(0.0 < cfg.opt_zeta_lo_deg && cfg.opt_zeta_lo_deg < cfg.opt_zeta_hi_deg &&
        cfg.opt_zeta_hi_deg < 90.0 && cfg.opt_tol_deg > 0.0)) {
    throw config_error("invalid config value: require 0 < opt_zeta_lo_deg < opt_zeta_hi_deg < 90 and opt_tol_deg > 0");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  if (path.empty()) return config_from_json(json::object());
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

nlohmann::json ScenarioConfig::resolved() const {
  json j;
  j["earth_radius_km"] = params.earth_radius_km;
  j["altitude_km"] = altitude_list.size() == 1 ? json(altitude_list.front()) : json(altitude_list);
  j["sat_radius_km"] = params.sat_radius_km;
  j["sat_density_per_km2"] = params.sat_density_per_km2;
  j["ut_density_per_km2"] = params.ut_density_per_km2;
  j["pathloss_exponent"] = params.pathloss_exponent;
  j["link_gain"] = params.link_gain;
  j["bandwidth_hz"] = params.bandwidth_hz;
  j["elevation_deg"] = elevation_deg;
  j["variable"] = variable;
  if (grid) j["grid"] = *grid;
  j["mc_trials"] = mc_trials;
  j["master_seed"] = master_seed;
  j["output_path"] = output_path;
  j["output_format"] = output_format;
  j["baseline"] = baseline;
  j["fault_inject_sat_density"] = fault_inject_sat_density;
  j["opt_zeta_lo_deg"] = opt_zeta_lo_deg;
  j["opt_zeta_hi_deg"] = opt_zeta_hi_deg;
  j["opt_tol_deg"] = opt_tol_deg;
  return j;
}

}  // namespace comsat
