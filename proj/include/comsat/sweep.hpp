#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "comsat/params.hpp"
#include "comsat/quadrature.hpp"

namespace comsat {

enum class SweepVariable { threshold_db, elevation_deg, altitude_km, ut_density };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& s);

struct SweepSpec {
  SystemParams base_params;
  double elevation_deg = 15.0;  // fixed elevation for non-elevation sweeps
  SweepVariable variable = SweepVariable::threshold_db;
  std::vector<double> grid;  // nonempty, strictly increasing
  long mc_trials = 0;        // 0 = analytic only, otherwise >= 100
  std::uint64_t master_seed = 0;
  bool include_baseline = false;  // threshold sweeps only; needs mc_trials > 0
  QuadratureSpec quad;

  void validate() const;
};

/// One sweep row; fields are populated according to the sweep variable
/// (coverage columns for threshold sweeps, rate/SE columns otherwise) and
/// the Monte Carlo fields stay empty when mc_trials == 0.
struct CurvePoint {
  double x = 0.0;
  std::optional<double> analytic_cov;
  std::optional<double> mc_cov;
  std::optional<double> mc_cov_hw;
  std::optional<double> baseline_cov;
  std::optional<double> empty_serving_frac;
  std::optional<double> analytic_rate;
  std::optional<double> analytic_se;
  std::optional<double> mc_rate;
  std::optional<double> mc_rate_hw;
  std::optional<double> mc_se;
};

struct CurveSet {
  SweepVariable variable = SweepVariable::threshold_db;
  std::vector<CurvePoint> rows;
};

/// Evaluates the grid point by point (analytic always, Monte Carlo when
/// mc_trials > 0, per-point seeds derived from the master seed), wrapping
/// any per-point failure with the offending grid value.
CurveSet run_sweep(const SweepSpec& spec);

struct OptimizeResult {
  double zeta_star_deg = 0.0;
  double rate_star = 0.0;  // bits/s
  double bracket_lo_deg = 0.0;
  double bracket_hi_deg = 0.0;
  int iterations = 0;       // objective evaluations
  bool flat_objective = false;  // rate varied < 0.1% over the scan
};

/// Maximizes the analytic per-user rate over the elevation angle by a 1-deg
/// coarse scan followed by golden-section refinement to tol_deg. The argmax
/// does not depend on the bandwidth (a positive prefactor).
OptimizeResult optimize_elevation(const SystemParams& p, double zeta_lo_deg, double zeta_hi_deg,
                                  double tol_deg, const QuadratureSpec& quad = {});

}  // namespace comsat
