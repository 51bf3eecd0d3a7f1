#pragma once

#include "comsat/params.hpp"

namespace comsat {

/// Derived geometry of the serving cone and interference annulus for a
/// cone half-angle eta in [0, pi/2] (eta = 90deg - elevation).
///
/// Satellites at slant distance d <= r_serv_max_km lie inside the cone and
/// jointly serve the user; satellites with r_int_min_km < d <= r_int_max_km
/// are above the horizon but outside the cone and interfere. r_int_min_km
/// is the same value as r_serv_max_km by construction.
struct ElevationGeometry {
  double eta_rad = 0.0;
  double r_serv_min_km = 0.0;
  double r_serv_max_km = 0.0;
  double r_int_min_km = 0.0;
  double r_int_max_km = 0.0;  // horizon distance sqrt(Rs^2 - Re^2)
  double lowest_alt_km = 0.0;

  static ElevationGeometry from_cone_angle(const SystemParams& p, double eta_rad);
  static ElevationGeometry from_elevation_deg(const SystemParams& p, double zeta_deg);
};

/// Largest slant distance from the user to a satellite inside the cone:
/// sqrt(Rs^2 - Re^2 sin^2 eta) - Re cos eta.
double max_serving_distance(const SystemParams& p, double eta_rad);

/// CDF of the slant distance from the user to a uniformly chosen serving
/// satellite. Piecewise: 0 below Rs-Re, quadratic in d on the serving
/// shell, 1 above max_serving_distance. At eta == 0 the shell has zero
/// width and the CDF degenerates to a unit step at d = Rs-Re.
double serving_distance_cdf(const SystemParams& p, double eta_rad, double d_km);

/// Matching density: d scaled by the shared shell normalizer on the
/// support, 0 outside (a point mass at Rs-Re when eta == 0).
double serving_distance_pdf(const SystemParams& p, double eta_rad, double d_km);

/// Lowest orbital altitude a satellite can have and still fall inside the
/// cone; equals max_serving_distance * cos(eta), and 0 at eta = pi/2.
double lowest_serving_altitude(const SystemParams& p, double eta_rad);

/// Mean number of ground users inside one satellite's service cap (the
/// spherical cap of earth points within max_serving_distance of it).
double avg_uts_per_sap(const SystemParams& p, double eta_rad);

/// Area of the satellite-sphere cap within slant distance r of the user:
/// 2*pi*[Rs - Re - ((Rs^2-Re^2) - r^2)/(2*Re)]*Rs. Defined for
/// r in [Rs-Re, Rs+Re]; its derivative in r is 2*pi*r*Rs/Re.
double cap_area(const SystemParams& p, double r_km);

}  // namespace comsat
