#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "comsat/config.hpp"
#include "comsat/geometry.hpp"
#include "comsat/params.hpp"

namespace comsat {

struct CheckResult {
  std::string name;
  bool pass = false;
  double statistic = 0.0;  // measured value
  double threshold = 0.0;  // pass bound on the statistic
  std::string details;
};

/// Cross-oracle checks of the simulator against the closed forms. Each
/// check is deterministic for a fixed seed. Every check draws with
/// sim_params and references the closed forms at model_params; the two
/// differ only under fault injection.
namespace checks {

/// KS distance between simulated serving-satellite distances and the
/// closed-form CDF; n_samples serving distances are accumulated across
/// trials. Pass bound 0.01. (The distance law is density-free.)
CheckResult serving_distance_ks(const SystemParams& sim_params, const SystemParams& model_params,
                                double eta_rad, long n_samples, std::uint64_t seed);

/// Chi-square goodness-of-fit of constellation sizes against the Poisson
/// count law, at the 5% level, over n_draws constellations.
CheckResult poisson_count_chi2(const SystemParams& sim_params, const SystemParams& model_params,
                               long n_draws, std::uint64_t seed);

/// Worst relative error of empirical E[exp(-s I)] against the closed-form
/// Laplace transform over four decades of s ending where the transform is
/// still comfortably estimable. Pass bound 0.005.
CheckResult laplace_match(const SystemParams& sim_params, const SystemParams& model_params,
                          double eta_rad, long n_draws, std::uint64_t seed);

/// KS distance of the joint desired power, on one frozen geometry, against
/// the exponential law with mean equal to the serving channel sum.
/// Pass bound 0.01. (Conditional on the geometry, so density-free.)
CheckResult desired_power_exponential_ks(const SystemParams& sim_params, double eta_rad,
                                         long n_draws, std::uint64_t seed);

/// Max |analytic - Monte Carlo| coverage over a dB threshold grid.
/// Pass bound 0.03.
CheckResult coverage_match(const SystemParams& sim_params, const SystemParams& model_params,
                           double eta_rad, double db_lo, double db_hi, double db_step,
                           long mc_trials, std::uint64_t seed);

}  // namespace checks

/// The validation suite behind `validate`: serving-distance KS at the three
/// canonical cone angles, the Poisson count law, the Laplace match, the
/// conditional-exponential desired power, and the coverage match at the
/// configured elevation (with the optional density fault injected on the
/// simulator side only).
std::vector<CheckResult> run_validation(const ScenarioConfig& cfg);

}  // namespace comsat
