#include "comsat/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "comsat/analytic.hpp"
#include "comsat/errors.hpp"
#include "comsat/montecarlo.hpp"
#include "comsat/stats.hpp"

namespace comsat {

namespace {

enum Stream : std::uint64_t {
  kServingKs = 100,
  kCountChi2 = 101,
  kLaplace = 102,
  kDesiredKs = 103,
  kCoverageMatch = 104,
};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

namespace checks {

CheckResult serving_distance_ks(const SystemParams& sim_params, const SystemParams& model_params,
                                double eta_rad, long n_samples, std::uint64_t seed) {
  const SystemParams& p = sim_params;
  const ElevationGeometry g = ElevationGeometry::from_cone_angle(p, eta_rad);
  std::vector<double> serving;
  serving.reserve(static_cast<std::size_t>(n_samples));
  std::vector<double> visible;
  std::uint64_t trial = 0;
  while (serving.size() < static_cast<std::size_t>(n_samples)) {
    Rng rng = make_trial_rng(seed, kServingKs, trial++);
    sample_visible_distances(p, rng, visible);
    for (const double d : visible) {
      if (d <= g.r_serv_max_km) serving.push_back(d);
    }
  }
  serving.resize(static_cast<std::size_t>(n_samples));
  const double stat = ks_statistic(std::move(serving), [&](double d) {
    return serving_distance_cdf(model_params, eta_rad, d);
  });
  CheckResult r;
  r.name = "serving_distance_ks_eta" + fmt(eta_rad * 180.0 / std::numbers::pi) + "deg";
  r.statistic = stat;
  r.threshold = 0.01;
  r.pass = stat < r.threshold;
  r.details = std::to_string(n_samples) + " serving distances over " + std::to_string(trial) + " trials";
  return r;
}

CheckResult poisson_count_chi2(const SystemParams& sim_params, const SystemParams& model_params,
                               long n_draws, std::uint64_t seed) {
  std::vector<long> counts(static_cast<std::size_t>(n_draws));
  for (long i = 0; i < n_draws; ++i) {
    Rng rng = make_trial_rng(seed, kCountChi2, static_cast<std::uint64_t>(i));
    counts[static_cast<std::size_t>(i)] =
        static_cast<long>(sample_constellation(sim_params, rng).count());
  }
  const double mean = 4.0 * std::numbers::pi * model_params.sat_radius_km *
                      model_params.sat_radius_km * model_params.sat_density_per_km2;
  const ChiSquareResult cs = chi_square_poisson(counts, mean);
  CheckResult r;
  r.name = "constellation_count_chi2";
  r.statistic = cs.statistic;
  r.threshold = cs.critical_95;
  r.pass = cs.pass_at_5pct();
  r.details = "dof=" + std::to_string(cs.dof) + " p=" + fmt(cs.p_value);
  return r;
}

CheckResult laplace_match(const SystemParams& sim_params, const SystemParams& model_params,
                          double eta_rad, long n_draws, std::uint64_t seed) {
  const SystemParams& p = sim_params;
  const ElevationGeometry g = ElevationGeometry::from_cone_angle(p, eta_rad);
  const ElevationGeometry g_model = ElevationGeometry::from_cone_angle(model_params, eta_rad);
  if (g_model.r_int_min_km >= g_model.r_int_max_km) {
    return {"interference_laplace_match", true, 0.0, 0.005, "empty interference annulus"};
  }
  // Draw per-trial aggregate interference with fading.
  std::vector<double> agg(static_cast<std::size_t>(n_draws));
  const double alpha = p.pathloss_exponent;
  std::vector<double> visible;
  for (long i = 0; i < n_draws; ++i) {
    Rng rng = make_trial_rng(seed, kLaplace, static_cast<std::uint64_t>(i));
    sample_visible_distances(p, rng, visible);
    std::exponential_distribution<double> h2(1.0);  // |h|^2 under CN(0,1)
    double sum = 0.0;
    for (const double d : visible) {
      if (d > g.r_serv_max_km) sum += std::pow(d, -alpha) * h2(rng);
    }
    agg[static_cast<std::size_t>(i)] = sum;
  }
  // Four decades of s, ending where the transform is still ~0.65 so the
  // empirical mean keeps a small relative error.
  double s_hi = 1.0;
  while (interference_laplace(model_params, g_model, s_hi) > 0.65 && s_hi < 1e100) s_hi *= 2.0;
  double lo = s_hi / 2.0, hi = s_hi;
  for (int it = 0; it < 60; ++it) {
    const double mid = std::sqrt(lo * hi);
    (interference_laplace(model_params, g_model, mid) > 0.65 ? lo : hi) = mid;
  }
  s_hi = lo;
  const double s_lo = s_hi / 1e4;
  double worst = 0.0;
  std::string detail;
  for (int k = 0; k < 9; ++k) {
    const double s = s_lo * std::pow(s_hi / s_lo, k / 8.0);
    double acc = 0.0;
    for (const double v : agg) acc += std::exp(-s * v);
    const double emp = acc / static_cast<double>(n_draws);
    const double model = interference_laplace(model_params, g_model, s);
    worst = std::max(worst, std::abs(emp - model) / model);
  }
  CheckResult r;
  r.name = "interference_laplace_match";
  r.statistic = worst;
  r.threshold = 0.005;
  r.pass = worst < r.threshold;
  r.details = "s in [" + fmt(s_lo) + ", " + fmt(s_hi) + "], " + std::to_string(n_draws) + " draws";
  return r;
}

CheckResult desired_power_exponential_ks(const SystemParams& sim_params, double eta_rad,
                                         long n_draws, std::uint64_t seed) {
  const SystemParams& p = sim_params;
  const ElevationGeometry g = ElevationGeometry::from_cone_angle(p, eta_rad);
  // Freeze one geometry with a nonempty serving set.
  std::vector<double> serving;
  std::vector<double> visible;
  std::uint64_t attempt = 0;
  while (serving.empty()) {
    if (attempt > 10000) {
      return {"desired_power_exponential_ks", false, 0.0, 0.01,
              "could not draw a nonempty serving set"};
    }
    Rng rng = make_trial_rng(seed, kDesiredKs, attempt++);
    sample_visible_distances(p, rng, visible);
    for (const double d : visible) {
      if (d <= g.r_serv_max_km) serving.push_back(d);
    }
  }
  double channel_sum = 0.0;
  for (const double d : serving) channel_sum += std::pow(d, -p.pathloss_exponent);

  Rng rng = make_trial_rng(seed, kDesiredKs, 1u << 20);
  std::vector<double> samples(static_cast<std::size_t>(n_draws));
  for (long i = 0; i < n_draws; ++i) {
    samples[static_cast<std::size_t>(i)] = evaluate_trial(p, serving, {}, rng).desired_power;
  }
  const double stat = ks_statistic(std::move(samples), [channel_sum](double x) {
    return -std::expm1(-x / channel_sum);
  });
  CheckResult r;
  r.name = "desired_power_exponential_ks";
  r.statistic = stat;
  r.threshold = 0.01;
  r.pass = stat < r.threshold;
  r.details = std::to_string(serving.size()) + " serving satellites, mean " + fmt(channel_sum);
  return r;
}

CheckResult coverage_match(const SystemParams& sim_params, const SystemParams& model_params,
                           double eta_rad, double db_lo, double db_hi, double db_step,
                           long mc_trials, std::uint64_t seed) {
  const ElevationGeometry g_an = ElevationGeometry::from_cone_angle(model_params, eta_rad);
  const ElevationGeometry g_mc = ElevationGeometry::from_cone_angle(sim_params, eta_rad);
  double worst = 0.0;
  double worst_db = db_lo;
  std::uint64_t idx = 0;
  for (double db = db_lo; db <= db_hi + 1e-9; db += db_step, ++idx) {
    const double gamma = std::pow(10.0, db / 10.0);
    const double analytic = coverage_probability(model_params, g_an, gamma);
    const double mc = estimate_coverage(sim_params, g_mc, gamma, mc_trials,
                                        derive_seed(seed, kCoverageMatch, idx))
                          .mean;
    if (std::abs(analytic - mc) > worst) {
      worst = std::abs(analytic - mc);
      worst_db = db;
    }
  }
  CheckResult r;
  r.name = "coverage_match_eta" + fmt(eta_rad * 180.0 / std::numbers::pi) + "deg";
  r.statistic = worst;
  r.threshold = 0.03;
  r.pass = worst <= r.threshold;
  r.details = "worst at " + fmt(worst_db) + " dB, " + std::to_string(mc_trials) + " trials/point";
  return r;
}

}  // namespace checks

std::vector<CheckResult> run_validation(const ScenarioConfig& cfg) {
  const SystemParams& model = cfg.params;
  SystemParams sim = model;
  if (cfg.fault_inject_sat_density) sim.sat_density_per_km2 *= 100.0;

  std::vector<CheckResult> out;
  for (const double eta : {std::numbers::pi / 6.0, std::numbers::pi / 4.0, std::numbers::pi / 3.0}) {
    out.push_back(checks::serving_distance_ks(sim, model, eta, 100000, cfg.master_seed));
  }
  out.push_back(checks::poisson_count_chi2(sim, model, 10000, cfg.master_seed));
  out.push_back(checks::laplace_match(sim, model, std::numbers::pi / 4.0, 200000, cfg.master_seed));
  out.push_back(checks::desired_power_exponential_ks(sim, std::numbers::pi / 4.0, 100000,
                                                     cfg.master_seed));
  out.push_back(checks::coverage_match(sim, model, eta_from_elevation_deg(cfg.elevation_deg),
                                       -50.0, 20.0, 1.0, cfg.mc_trials, cfg.master_seed));
  return out;
}

}  // namespace comsat
