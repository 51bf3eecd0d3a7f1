#include "comsat/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "comsat/errors.hpp"
#include "comsat/serialize.hpp"
#include "comsat/sweep.hpp"
#include "comsat/validate.hpp"

namespace comsat {

namespace {

std::vector<double> arange(double lo, double hi, double step) {
  std::vector<double> out;
  for (double v = lo; v <= hi + 1e-9; v += step) out.push_back(v);
  return out;
}

std::string default_or(const std::string& path, const std::string& fallback) {
  return path.empty() ? fallback : path;
}

std::string with_altitude_suffix(const std::string& path, double altitude_km) {
  const auto dot = path.rfind('.');
  const std::string suffix = "_alt" + format_number(altitude_km);
  if (dot == std::string::npos) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

void require_single_altitude(const ScenarioConfig& cfg, const char* command) {
  if (cfg.altitude_list.size() > 1) {
    throw config_error(std::string("an altitude_km list is only supported by 'rate', not '") +
                       command + "'");
  }
}

void require_variable(const ScenarioConfig& cfg, const std::string& expected) {
  if (!cfg.variable.empty() && cfg.variable != expected) {
    throw config_error("config key 'variable' = '" + cfg.variable + "' does not match this command ('" +
                       expected + "')");
  }
}

nlohmann::json metadata_for(const ScenarioConfig& cfg, const std::string& command,
                            const std::string& variable, const std::vector<double>& grid,
                            const std::string& out_path) {
  nlohmann::json meta = cfg.resolved();
  meta["command"] = command;
  meta["variable"] = variable;
  meta["grid"] = grid;
  meta["output_path"] = out_path;
  return meta;
}

}  // namespace

int cmd_coverage(const ScenarioConfig& cfg) {
  require_single_altitude(cfg, "coverage");
  require_variable(cfg, "threshold_db");
  const std::vector<double> grid = cfg.grid.value_or(arange(-50.0, 20.0, 1.0));

  SweepSpec spec;
  spec.base_params = cfg.params;
  spec.elevation_deg = cfg.elevation_deg;
  spec.variable = SweepVariable::threshold_db;
  spec.grid = grid;
  spec.mc_trials = cfg.mc_trials;
  spec.master_seed = cfg.master_seed;
  spec.include_baseline = cfg.baseline && cfg.mc_trials > 0;
  spec.quad = cfg.quad;

  const CurveSet curve = run_sweep(spec);
  const std::string path = default_or(
      cfg.output_path, cfg.output_format == "json" ? "comsat_coverage.json" : "comsat_coverage.csv");
  write_curve(path, cfg.output_format, curve,
              metadata_for(cfg, "coverage", "threshold_db", grid, path));
  std::cout << "coverage sweep: " << curve.rows.size() << " rows -> " << path << "\n";
  return kExitOk;
}

int cmd_rate(const ScenarioConfig& cfg) {
  require_variable(cfg, "elevation_deg");
  const std::vector<double> grid = cfg.grid.value_or(arange(5.0, 85.0, 1.0));
  const std::string base_path = default_or(
      cfg.output_path, cfg.output_format == "json" ? "comsat_rate.json" : "comsat_rate.csv");

  for (const double altitude : cfg.altitude_list) {
    SweepSpec spec;
    spec.base_params = cfg.params;
    spec.base_params.sat_radius_km = cfg.params.earth_radius_km + altitude;
    spec.elevation_deg = cfg.elevation_deg;
    spec.variable = SweepVariable::elevation_deg;
    spec.grid = grid;
    spec.mc_trials = cfg.mc_trials;
    spec.master_seed = cfg.master_seed;
    spec.quad = cfg.quad;

    const CurveSet curve = run_sweep(spec);
    const std::string path =
        cfg.altitude_list.size() == 1 ? base_path : with_altitude_suffix(base_path, altitude);
    nlohmann::json meta = metadata_for(cfg, "rate", "elevation_deg", grid, path);
    meta["altitude_km"] = altitude;
    meta["sat_radius_km"] = spec.base_params.sat_radius_km;
    write_curve(path, cfg.output_format, curve, meta);
    std::cout << "rate sweep (altitude " << format_number(altitude) << " km): "
              << curve.rows.size() << " rows -> " << path << "\n";
  }
  return kExitOk;
}

int cmd_optimize(const ScenarioConfig& cfg) {
  require_single_altitude(cfg, "optimize");
  const OptimizeResult res = optimize_elevation(cfg.params, cfg.opt_zeta_lo_deg,
                                                cfg.opt_zeta_hi_deg, cfg.opt_tol_deg, cfg.quad);
  nlohmann::json report;
  report["config"] = cfg.resolved();
  report["zeta_star_deg"] = res.zeta_star_deg;
  report["rate_star_bits_per_s"] = res.rate_star;
  report["bracket_deg"] = {res.bracket_lo_deg, res.bracket_hi_deg};
  report["iterations"] = res.iterations;
  report["flat_objective"] = res.flat_objective;

  const std::string path = default_or(cfg.output_path, "comsat_optimize.json");
  atomic_write_file(path, report.dump(2) + "\n");
  std::cout << "optimal elevation " << format_number(res.zeta_star_deg) << " deg, rate "
            << format_number(res.rate_star) << " bit/s -> " << path << "\n";
  if (res.flat_objective) {
    std::cerr << "warning: rate varies by less than 0.1% over the scan bracket\n";
  }
  return kExitOk;
}

int cmd_validate(const ScenarioConfig& cfg) {
  if (cfg.mc_trials < 100) {
    throw config_error("invalid config value: validate requires mc_trials >= 100");
  }
  const std::vector<CheckResult> results = run_validation(cfg);
  bool all_pass = true;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : results) {
    all_pass = all_pass && c.pass;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": statistic "
              << format_number(c.statistic) << " vs bound " << format_number(c.threshold) << " ("
              << c.details << ")\n";
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"statistic", c.statistic},
                      {"threshold", c.threshold},
                      {"details", c.details}});
  }
  nlohmann::json report;
  report["config"] = cfg.resolved();
  report["checks"] = std::move(checks);
  report["all_pass"] = all_pass;
  const std::string path = default_or(cfg.output_path, "comsat_validation.json");
  atomic_write_file(path, report.dump(2) + "\n");
  std::cout << (all_pass ? "validation passed" : "validation FAILED") << " -> " << path << "\n";
  return all_pass ? kExitOk : kExitValidationFailed;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Coverage and rate model for coordinated multi-satellite joint transmission"};
  app.require_subcommand(1);

  struct Flags {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long trials = 0;
    bool trials_set = false;
    bool baseline = false;
  } flags;

  auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "scenario config file (JSON)");
    sub->add_option("--out", flags.out_path, "output file path");
    sub->add_option("--seed", flags.seed, "master seed override")->each([&flags](const std::string&) {
      flags.seed_set = true;
    });
    sub->add_option("--trials", flags.trials, "Monte Carlo trials override")
        ->each([&flags](const std::string&) { flags.trials_set = true; });
    sub->add_flag("--baseline", flags.baseline, "include the nearest-satellite baseline column");
  };

  CLI::App* coverage = app.add_subcommand("coverage", "coverage probability vs SINR threshold");
  CLI::App* rate = app.add_subcommand("rate", "rate and spectral efficiency vs elevation angle");
  CLI::App* optimize = app.add_subcommand("optimize", "find the rate-maximizing elevation angle");
  CLI::App* validate = app.add_subcommand("validate", "cross-check closed forms against the simulator");
  for (CLI::App* sub : {coverage, rate, optimize, validate}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    ScenarioConfig cfg = load_config(flags.config_path);
    if (!flags.out_path.empty()) cfg.output_path = flags.out_path;
    if (flags.seed_set) cfg.master_seed = flags.seed;
    if (flags.trials_set) {
      if (flags.trials < 0 || (flags.trials > 0 && flags.trials < 100)) {
        throw config_error("invalid config value: --trials must be 0 or at least 100");
      }
      cfg.mc_trials = flags.trials;
    }
    if (flags.baseline) cfg.baseline = true;

    if (coverage->parsed()) return cmd_coverage(cfg);
    if (rate->parsed()) return cmd_rate(cfg);
    if (optimize->parsed()) return cmd_optimize(cfg);
    return cmd_validate(cfg);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericError;
  }
}

}  // namespace comsat
