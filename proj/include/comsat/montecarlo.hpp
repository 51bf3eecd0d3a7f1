#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "comsat/geometry.hpp"
#include "comsat/params.hpp"
#include "comsat/rng.hpp"

namespace comsat {

/// One sampled realization of the satellite positions: a Poisson number of
/// points (mean 4*pi*Rs^2*lambda_s) placed uniformly on the orbital sphere.
struct Constellation {
  std::vector<std::array<double, 3>> positions;

  std::size_t count() const { return positions.size(); }
};

/// SINR decomposition of one trial. desired_power is |sum of d^(-a/2)*h|^2
/// over the serving set (the satellites transmit one shared symbol, so the
/// complex amplitudes add before squaring); interference adds per-satellite
/// powers d^(-a)*|h|^2. sinr = link_gain*desired / (link_gain*interference + 1),
/// and an empty serving set yields sinr == 0.
struct TrialOutcome {
  double desired_power = 0.0;
  double interference_power = 0.0;
  int serving_count = 0;
  double sinr = 0.0;
};

struct EstimatorResult {
  double mean = 0.0;
  double half_width_95 = 0.0;  // normal-approximation 95% half width
  long n_trials = 0;
  double empty_serving_fraction = 0.0;
};

enum class Fading {
  rayleigh,  // h ~ CN(0,1) i.i.d. per satellite
  unit,      // h == 1: deterministic coherent sum (test hook)
};

Constellation sample_constellation(const SystemParams& p, Rng& rng);

struct ClassifiedDistances {
  std::vector<double> serving;      // d <= r_serv_max
  std::vector<double> interfering;  // r_serv_max < d <= r_int_max
};

/// Splits a constellation into serving/interfering slant distances for the
/// typical user at the zenith point (0, 0, Re); satellites below the
/// horizon are dropped.
ClassifiedDistances classify(const Constellation& c, const SystemParams& p,
                             const ElevationGeometry& g);

/// Slant distances of the satellites above the typical user's horizon,
/// sampled directly on the visible cap. Equal in law to sampling a full
/// constellation and keeping distances <= r_int_max.
void sample_visible_distances(const SystemParams& p, Rng& rng, std::vector<double>& out);

TrialOutcome evaluate_trial(const SystemParams& p, std::span<const double> serving,
                            std::span<const double> interfering, Rng& rng,
                            Fading fading = Fading::rayleigh);

/// Nearest-satellite association on given visible distances: the closest
/// one serves, the rest interfere. With a single visible satellite this is
/// the same trial as evaluate_trial with a one-element serving set.
TrialOutcome evaluate_nearest_trial(const SystemParams& p, std::span<const double> visible,
                                    Rng& rng, Fading fading = Fading::rayleigh);

/// Fresh constellation + fading draw for the joint-transmission system.
TrialOutcome run_trial(const SystemParams& p, const ElevationGeometry& g, Rng& rng);

/// Fraction of trials with SINR above gamma_th (linear), with 95% CI.
/// Deterministic for a fixed master_seed regardless of n_threads.
EstimatorResult estimate_coverage(const SystemParams& p, const ElevationGeometry& g,
                                  double gamma_th, long n_trials, std::uint64_t master_seed,
                                  int n_threads = 0);

struct RateSeEstimate {
  EstimatorResult rate;  // bits/s, bandwidth/ut_load * SE
  EstimatorResult se;    // bits/s/Hz, mean of log2(1+sinr)
};

RateSeEstimate estimate_rate_and_se(const SystemParams& p, const ElevationGeometry& g,
                                    long n_trials, std::uint64_t master_seed, int n_threads = 0);

/// Coverage of the conventional association: the single nearest visible
/// satellite serves, every other visible satellite interferes, and trials
/// with no visible satellite count as outage.
EstimatorResult estimate_nearest_sat_coverage(const SystemParams& p, double gamma_th,
                                              long n_trials, std::uint64_t master_seed,
                                              int n_threads = 0);

}  // namespace comsat
