#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "comsat/cli.hpp"
#include "comsat/config.hpp"
#include "comsat/errors.hpp"
#include "comsat/serialize.hpp"

using namespace comsat;
using nlohmann::json;

namespace {

std::string cli_path() {
  const char* p = std::getenv("COMSAT_CLI");
  REQUIRE_MESSAGE(p != nullptr, "COMSAT_CLI must point at the CLI binary");
  return p;
}

int run(const std::string& args, const std::string& stderr_file = "") {
  std::string cmd = cli_path() + " " + args + " >cli_stdout.txt";
  if (!stderr_file.empty()) cmd += " 2>" + stderr_file;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  REQUIRE(out.good());
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

// Splits one CSV data row into doubles (empty fields become NaN).
std::vector<double> row_values(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) {
    out.push_back(field.empty() ? std::nan("") : std::stod(field));
  }
  return out;
}

}  // namespace

TEST_CASE("config defaults") {
  const ScenarioConfig cfg = config_from_json(json::object());
  CHECK(cfg.params.earth_radius_km == doctest::Approx(6371.393));
  CHECK(cfg.params.sat_radius_km == doctest::Approx(6871.393));
  CHECK(cfg.params.sat_density_per_km2 == doctest::Approx(5e-6));
  CHECK(cfg.params.ut_density_per_km2 == doctest::Approx(1e-6));
  CHECK(cfg.params.pathloss_exponent == doctest::Approx(2.0));
  CHECK(cfg.mc_trials == 10000);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.output_format == "csv");
  CHECK(cfg.baseline);
  CHECK_FALSE(cfg.grid.has_value());
}

TEST_CASE("config rejects unknown and malformed keys") {
  CHECK_THROWS_WITH_AS(config_from_json(json::parse(R"({"satellites": 5})")),
                       "unknown config key 'satellites'", config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"mc_trials": 50})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"mc_trials": -1})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"output_format": "xml"})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"grid": []})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"grid": [2, 1]})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"elevation_deg": 0})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"altitude_km": []})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"altitude_km": "high"})")), config_error);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"master_seed": -4})")), config_error);

  try {
    config_from_json(json::parse(R"({"sat_density_per_km2": -5e-6})"));
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("sat_density_per_km2") != std::string::npos);
  }
}

TEST_CASE("config accepts an altitude list and resolves the first entry") {
  const ScenarioConfig cfg = config_from_json(json::parse(R"({"altitude_km": [500, 1000]})"));
  CHECK(cfg.altitude_list == std::vector<double>{500.0, 1000.0});
  CHECK(cfg.params.sat_radius_km == doctest::Approx(6871.393));
  CHECK(cfg.resolved()["altitude_km"].is_array());
}

TEST_CASE("number formatting is 12 significant digits with a dot separator") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(2966.6713985243096) == "2966.67139852");
  CHECK(format_number(-50.0) == "-50");
  CHECK(format_number(3e7) == "30000000");
  CHECK(format_number(5e-6) == "5e-06");
}

TEST_CASE("cli: coverage sweep writes the documented header and rows") {
  write_file("cov_small.json", R"({
    "mc_trials": 200, "master_seed": 7, "elevation_deg": 30,
    "grid": [-10, -5, 0], "output_path": "cov_small.csv"
  })");
  CHECK(run("coverage --config cov_small.json") == 0);
  const std::string csv = slurp("cov_small.csv");
  const auto lines = data_lines(csv);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "threshold_db,analytic_cov,mc_cov,mc_ci95,baseline_cov,empty_serving_frac");
  CHECK(row_values(lines[1]).size() == 6);
  CHECK(csv.find("# master_seed = 7") != std::string::npos);
  CHECK(csv.find("# command = \"coverage\"") != std::string::npos);
}

TEST_CASE("cli: default threshold grid has 71 rows") {
  write_file("cov_an.json", R"({"mc_trials": 0, "output_path": "cov_an.csv"})");
  CHECK(run("coverage --config cov_an.json") == 0);
  const auto lines = data_lines(slurp("cov_an.csv"));
  REQUIRE(lines.size() == 72);  // header + 71 grid points
  CHECK(lines[0] == "threshold_db,analytic_cov");
  CHECK(row_values(lines[1])[0] == -50.0);
  CHECK(row_values(lines[71])[0] == 20.0);
}

TEST_CASE("cli: config errors name the offending key and exit 2") {
  write_file("bad_density.json", R"({"sat_density_per_km2": -1})");
  CHECK(run("coverage --config bad_density.json", "cli_stderr.txt") == 2);
  CHECK(slurp("cli_stderr.txt").find("sat_density_per_km2") != std::string::npos);

  write_file("bad_grid.json", R"({"grid": []})");
  CHECK(run("rate --config bad_grid.json", "cli_stderr.txt") == 2);

  CHECK(run("coverage --config does_not_exist.json", "cli_stderr.txt") == 2);
  CHECK(run("validate --config cov_small.json --trials 50", "cli_stderr.txt") == 2);
}

TEST_CASE("cli: reruns with the same config and seed are byte-identical") {
  write_file("det.json", R"({
    "mc_trials": 300, "master_seed": 20240811, "elevation_deg": 30,
    "grid": [-12, -6, 0], "output_path": "det_a.csv"
  })");
  CHECK(run("coverage --config det.json") == 0);
  CHECK(run("coverage --config det.json --out det_b.csv") == 0);
  std::string a = slurp("det_a.csv");
  std::string b = slurp("det_b.csv");
  // the echoed output_path differs; normalize it away before comparing
  const auto strip = [](const std::string& s, const std::string& needle) {
    std::string out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find(needle) == std::string::npos) out += line + "\n";
    }
    return out;
  };
  CHECK(strip(a, "output_path") == strip(b, "output_path"));

  CHECK(run("coverage --config det.json --out det_c.csv --seed 999") == 0);
  CHECK(strip(slurp("det_c.csv"), "output_path") != strip(a, "output_path"));
}

TEST_CASE("cli: rate with an altitude list writes one file per altitude") {
  write_file("rate2.json", R"({
    "mc_trials": 0, "altitude_km": [500, 1000],
    "grid": [20, 25, 30], "output_path": "rate2.csv"
  })");
  CHECK(run("rate --config rate2.json") == 0);
  const auto l500 = data_lines(slurp("rate2_alt500.csv"));
  const auto l1000 = data_lines(slurp("rate2_alt1000.csv"));
  REQUIRE(l500.size() == 4);
  REQUIRE(l1000.size() == 4);
  CHECK(l500[0] == "elevation_deg,analytic_rate,analytic_se");
  for (std::size_t i = 1; i < 4; ++i) {
    const auto a = row_values(l500[i]);
    const auto b = row_values(l1000[i]);
    CHECK(a[1] > b[1]);  // rate: lower orbit wins at the same elevation
    CHECK(b[2] > a[2]);  // spectral efficiency: higher orbit wins
  }
}

TEST_CASE("cli: rate emits Monte Carlo columns when trials are requested") {
  write_file("rate_mc.json", R"({
    "mc_trials": 200, "master_seed": 5, "grid": [25, 45], "output_path": "rate_mc.csv"
  })");
  CHECK(run("rate --config rate_mc.json") == 0);
  const auto lines = data_lines(slurp("rate_mc.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "elevation_deg,analytic_rate,analytic_se,mc_rate,mc_se,mc_ci95");
}

TEST_CASE("cli: json output embeds the resolved config") {
  write_file("cov_json.json", R"({
    "mc_trials": 0, "grid": [-3, 0], "output_format": "json", "output_path": "cov.json"
  })");
  CHECK(run("coverage --config cov_json.json") == 0);
  const json doc = json::parse(slurp("cov.json"));
  CHECK(doc["config"]["master_seed"] == 42);
  CHECK(doc["config"]["sat_radius_km"].get<double>() == doctest::Approx(6871.393));
  REQUIRE(doc["rows"].is_array());
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["threshold_db"] == -3.0);
  CHECK(doc["rows"][0].contains("analytic_cov"));
}

TEST_CASE("cli: optimize report echoes the resolved parameters") {
  write_file("opt.json", R"({
    "mc_trials": 0, "opt_zeta_lo_deg": 20, "opt_zeta_hi_deg": 35,
    "opt_tol_deg": 0.1, "output_path": "opt_a.json"
  })");
  CHECK(run("optimize --config opt.json") == 0);
  const json a = json::parse(slurp("opt_a.json"));
  CHECK(a["zeta_star_deg"].get<double>() > 20.0);
  CHECK(a["zeta_star_deg"].get<double>() < 35.0);
  CHECK(a["rate_star_bits_per_s"].get<double>() > 0.0);
  CHECK(a["config"]["link_gain"].get<double>() == doctest::Approx(1e8));
  CHECK(a["config"]["bandwidth_hz"].get<double>() == doctest::Approx(3e7));
  CHECK(a["iterations"].get<int>() > 0);

  write_file("opt_fine.json", R"({
    "mc_trials": 0, "opt_zeta_lo_deg": 20, "opt_zeta_hi_deg": 35,
    "opt_tol_deg": 0.01, "output_path": "opt_b.json"
  })");
  CHECK(run("optimize --config opt_fine.json") == 0);
  const json b = json::parse(slurp("opt_b.json"));
  CHECK(std::abs(a["zeta_star_deg"].get<double>() - b["zeta_star_deg"].get<double>()) <= 0.1);
}

TEST_CASE("cli: default optimize lands in the documented bracket") {
  write_file("opt_def.json", R"({"mc_trials": 0, "output_path": "opt_def.json"})");
  CHECK(run("optimize --config opt_def.json") == 0);
  const json r = json::parse(slurp("opt_def.json"));
  CHECK(r["zeta_star_deg"].get<double>() > 20.0);
  CHECK(r["zeta_star_deg"].get<double>() < 30.0);
}

TEST_CASE("cli: unknown subcommand or flag exits 2") {
  CHECK(run("frobnicate", "cli_stderr.txt") == 2);
  CHECK(run("coverage --what", "cli_stderr.txt") == 2);
}

TEST_CASE("cli: validate passes on defaults and fails under fault injection") {
  write_file("val.json", R"({
    "mc_trials": 2000, "master_seed": 31, "output_path": "val.json.out"
  })");
  CHECK(run("validate --config val.json") == 0);
  const json rep = json::parse(slurp("val.json.out"));
  CHECK(rep["all_pass"].get<bool>());
  REQUIRE(rep["checks"].is_array());
  CHECK(rep["checks"].size() == 7);

  write_file("val_fault.json", R"({
    "mc_trials": 2000, "master_seed": 31, "fault_inject_sat_density": true,
    "output_path": "val_fault.json.out"
  })");
  CHECK(run("validate --config val_fault.json") == 4);
  const json fault = json::parse(slurp("val_fault.json.out"));
  CHECK_FALSE(fault["all_pass"].get<bool>());
  // The count law and the interference transform see the inflated density
  // head on. (Coverage itself is nearly density-invariant at alpha = 2:
  // desired and interference rescale together.)
  bool count_failed = false;
  bool laplace_failed = false;
  for (const auto& c : fault["checks"]) {
    const std::string name = c["name"].get<std::string>();
    if (name == "constellation_count_chi2") count_failed = !c["pass"].get<bool>();
    if (name == "interference_laplace_match") laplace_failed = !c["pass"].get<bool>();
  }
  CHECK(count_failed);
  CHECK(laplace_failed);
}
