#pragma once

#include <numbers>

namespace comsat {

/// Constellation and link-budget scalars. Distances are kilometres,
/// densities are per km^2, bandwidth is Hz. link_gain is the composite
/// P_tx * G_tx * beta_0 / sigma_noise^2 with noise normalized to unit
/// variance, so SINR = link_gain * S / (link_gain * I + 1).
struct SystemParams {
  double earth_radius_km = 6371.393;
  double sat_radius_km = 6871.393;  // earth radius + orbit altitude
  double sat_density_per_km2 = 5e-6;
  double ut_density_per_km2 = 1e-6;
  double pathloss_exponent = 2.0;
  double link_gain = 1e8;
  double bandwidth_hz = 3e7;

  double altitude_km() const { return sat_radius_km - earth_radius_km; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Cone half-angle eta (measured from the zenith) for an elevation angle
/// zeta given in degrees: eta = 90deg - zeta, in radians.
double eta_from_elevation_deg(double zeta_deg);
double elevation_deg_from_eta(double eta_rad);

inline constexpr double half_pi = std::numbers::pi / 2.0;

}  // namespace comsat
