#include "comsat/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "comsat/analytic.hpp"
#include "comsat/errors.hpp"
#include "comsat/geometry.hpp"
#include "comsat/montecarlo.hpp"
#include "comsat/rng.hpp"

namespace comsat {

namespace {

// Per-point seed streams, one tag per estimator kind.
enum PointStream : std::uint64_t { kCovStream = 11, kBaselineStream = 12, kRateStream = 13 };

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

CurvePoint threshold_point(const SweepSpec& spec, std::size_t i) {
  const double gamma = db_to_linear(spec.grid[i]);
  const ElevationGeometry geom =
      ElevationGeometry::from_elevation_deg(spec.base_params, spec.elevation_deg);
  CurvePoint pt;
  pt.x = spec.grid[i];
  pt.analytic_cov = coverage_probability(spec.base_params, geom, gamma, spec.quad);
  if (spec.mc_trials > 0) {
    const EstimatorResult mc =
        estimate_coverage(spec.base_params, geom, gamma, spec.mc_trials,
                          derive_seed(spec.master_seed, kCovStream, i));
    pt.mc_cov = mc.mean;
    pt.mc_cov_hw = mc.half_width_95;
    pt.empty_serving_frac = mc.empty_serving_fraction;
    if (spec.include_baseline) {
      pt.baseline_cov = estimate_nearest_sat_coverage(spec.base_params, gamma, spec.mc_trials,
                                                      derive_seed(spec.master_seed, kBaselineStream, i))
                            .mean;
    }
  }
  return pt;
}

CurvePoint rate_point(const SweepSpec& spec, std::size_t i) {
  SystemParams p = spec.base_params;
  double zeta = spec.elevation_deg;
  switch (spec.variable) {
    case SweepVariable::elevation_deg:
      zeta = spec.grid[i];
      break;
    case SweepVariable::altitude_km:
      p.sat_radius_km = p.earth_radius_km + spec.grid[i];
      break;
    case SweepVariable::ut_density:
      p.ut_density_per_km2 = spec.grid[i];
      break;
    default:
      break;
  }
  p.validate();
  const ElevationGeometry geom = ElevationGeometry::from_elevation_deg(p, zeta);
  CurvePoint pt;
  pt.x = spec.grid[i];
  pt.analytic_rate = ergodic_rate(p, geom, spec.quad).value;
  pt.analytic_se = spectral_efficiency(p, geom, spec.quad).value;
  if (spec.mc_trials > 0) {
    const RateSeEstimate mc = estimate_rate_and_se(p, geom, spec.mc_trials,
                                                   derive_seed(spec.master_seed, kRateStream, i));
    pt.mc_rate = mc.rate.mean;
    pt.mc_rate_hw = mc.rate.half_width_95;
    pt.mc_se = mc.se.mean;
    pt.empty_serving_frac = mc.se.empty_serving_fraction;
  }
  return pt;
}

}  // namespace

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::threshold_db: return "threshold_db";
    case SweepVariable::elevation_deg: return "elevation_deg";
    case SweepVariable::altitude_km: return "altitude_km";
    case SweepVariable::ut_density: return "ut_density";
  }
  throw std::logic_error("unknown sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& s) {
  if (s == "threshold_db") return SweepVariable::threshold_db;
  if (s == "elevation_deg") return SweepVariable::elevation_deg;
  if (s == "altitude_km") return SweepVariable::altitude_km;
  if (s == "ut_density") return SweepVariable::ut_density;
  throw config_error("unknown sweep variable: " + s);
}

void SweepSpec::validate() const {
  base_params.validate();
  quad.validate();
  if (grid.empty()) throw config_error("sweep grid must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw config_error("sweep grid must be strictly increasing");
  }
  if (mc_trials < 0) throw config_error("mc_trials must be nonnegative");
  if (mc_trials > 0 && mc_trials < 100) {
    throw config_error("mc_trials must be 0 (analytic only) or at least 100");
  }
  if (include_baseline && variable != SweepVariable::threshold_db) {
    throw config_error("the nearest-satellite baseline applies to threshold sweeps only");
  }
  if (!(elevation_deg > 0.0 && elevation_deg <= 90.0)) {
    throw config_error("elevation_deg must lie in (0, 90]");
  }
}

CurveSet run_sweep(const SweepSpec& spec) {
  spec.validate();
  CurveSet out;
  out.variable = spec.variable;
  out.rows.reserve(spec.grid.size());
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    try {
      out.rows.push_back(spec.variable == SweepVariable::threshold_db ? threshold_point(spec, i)
                                                                      : rate_point(spec, i));
    } catch (const std::exception& e) {
      throw numeric_error("sweep failed at " + to_string(spec.variable) + " = " +
                          std::to_string(spec.grid[i]) + ": " + e.what());
    }
  }
  return out;
}

OptimizeResult optimize_elevation(const SystemParams& p, double zeta_lo_deg, double zeta_hi_deg,
                                  double tol_deg, const QuadratureSpec& quad) {
  p.validate();
  if (!(0.0 < zeta_lo_deg && zeta_lo_deg < zeta_hi_deg && zeta_hi_deg < 90.0)) {
    throw std::domain_error("require 0 < zeta_lo < zeta_hi < 90");
  }
  if (!(tol_deg > 0.0)) throw std::domain_error("tol_deg must be positive");

  int evals = 0;
  const auto rate_at = [&](double zeta) {
    ++evals;
    return ergodic_rate(p, ElevationGeometry::from_elevation_deg(p, zeta), quad).value;
  };

  // Coarse 1-degree scan guards the golden-section unimodality assumption.
  double best_z = zeta_lo_deg;
  double best_v = rate_at(zeta_lo_deg);
  double worst_v = best_v;
  std::vector<double> zs;
  for (double z = zeta_lo_deg; z < zeta_hi_deg; z += 1.0) zs.push_back(z);
  zs.push_back(zeta_hi_deg);
  for (std::size_t i = 1; i < zs.size(); ++i) {
    const double v = rate_at(zs[i]);
    worst_v = std::min(worst_v, v);
    if (v > best_v) {
      best_v = v;
      best_z = zs[i];
    }
  }
  const bool flat = (best_v - worst_v) < 1e-3 * best_v;

  double a = std::max(zeta_lo_deg, best_z - 1.0);
  double b = std::min(zeta_hi_deg, best_z + 1.0);
  const OptimizeResult bracket{best_z, best_v, a, b, 0, flat};

  constexpr double inv_phi = 0.6180339887498949;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = rate_at(c);
  double fd = rate_at(d);
  while (b - a > tol_deg) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = rate_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = rate_at(d);
    }
  }
  OptimizeResult r = bracket;
  r.zeta_star_deg = (a + b) / 2.0;
  r.rate_star = rate_at(r.zeta_star_deg);
  if (best_v > r.rate_star) {  // refinement may not beat the scan exactly at a kink
    r.zeta_star_deg = best_z;
    r.rate_star = best_v;
  }
  r.iterations = evals;
  return r;
}

}  // namespace comsat
