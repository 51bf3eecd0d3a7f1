#include "comsat/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "comsat/errors.hpp"

namespace comsat {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= half_pi)) {
    throw std::domain_error("cone angle eta must lie in [0, pi/2], got " + std::to_string(eta));
  }
}

struct ConeTrig {
  double sin2;  // sin^2(eta), snapped to exact 0/1 at the endpoints
  double cos_;  // cos(eta), snapped to exact 0 at pi/2
};

ConeTrig cone_trig(double eta) {
  double s = std::sin(eta);
  double c = std::cos(eta);
  // Within a ulp of the endpoints, land on them exactly so the shell and
  // annulus collapse identities hold bit-for-bit.
  if (c < 1e-15) {
    c = 0.0;
    s = 1.0;
  }
  if (s < 1e-15) {
    s = 0.0;
    c = 1.0;
  }
  return {s * s, c};
}

// sqrt(Rs^2 - Re^2 sin^2 eta) evaluated as Re*sqrt((Rs/Re)^2 - sin^2 eta);
// Rs/Re is close to 1 here and the direct difference of squares loses digits.
double radical(const SystemParams& p, double sin2) {
  const double ratio = p.sat_radius_km / p.earth_radius_km;
  return p.earth_radius_km * std::sqrt(ratio * ratio - sin2);
}

// Serving-shell bounds plus the shared CDF/PDF normalizer
// (r_max^2 - r_min^2, algebraically equal to
// 2*Re*(Rs - Re sin^2 eta - sqrt(Rs^2 - Re^2 sin^2 eta) cos eta)).
struct ServingShell {
  double r_min;
  double r_max;
  double norm;
};

ServingShell serving_shell(const SystemParams& p, double eta) {
  const ConeTrig t = cone_trig(eta);
  const double r_min = p.sat_radius_km - p.earth_radius_km;
  double r_max;
  if (t.sin2 == 0.0) {
    r_max = r_min;  // cone collapses to the zenith ray
  } else {
    r_max = std::max(radical(p, t.sin2) - p.earth_radius_km * t.cos_, r_min);
  }
  return {r_min, r_max, (r_max - r_min) * (r_max + r_min)};
}

}  // namespace

void SystemParams::validate() const {
  auto req = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  req(earth_radius_km > 0.0, "earth_radius_km must be positive");
  req(sat_radius_km > earth_radius_km, "sat_radius_km must exceed earth_radius_km");
  req(sat_density_per_km2 > 0.0, "sat_density_per_km2 must be positive");
  req(ut_density_per_km2 > 0.0, "ut_density_per_km2 must be positive");
  req(pathloss_exponent >= 2.0, "pathloss_exponent must be >= 2");
  req(link_gain > 0.0, "link_gain must be positive");
  req(bandwidth_hz > 0.0, "bandwidth_hz must be positive");
}

double eta_from_elevation_deg(double zeta_deg) {
  return (90.0 - zeta_deg) * std::numbers::pi / 180.0;
}

double elevation_deg_from_eta(double eta_rad) {
  return 90.0 - eta_rad * 180.0 / std::numbers::pi;
}

ElevationGeometry ElevationGeometry::from_cone_angle(const SystemParams& p, double eta) {
  check_eta(eta);
  const ServingShell shell = serving_shell(p, eta);
  ElevationGeometry g;
  g.eta_rad = eta;
  g.r_serv_min_km = shell.r_min;
  g.r_serv_max_km = shell.r_max;
  g.r_int_min_km = shell.r_max;  // shared, not recomputed
  g.r_int_max_km = radical(p, 1.0);
  g.lowest_alt_km = lowest_serving_altitude(p, eta);
  return g;
}

ElevationGeometry ElevationGeometry::from_elevation_deg(const SystemParams& p, double zeta_deg) {
  return from_cone_angle(p, eta_from_elevation_deg(zeta_deg));
}

double max_serving_distance(const SystemParams& p, double eta) {
  check_eta(eta);
  return serving_shell(p, eta).r_max;
}

double serving_distance_cdf(const SystemParams& p, double eta, double d) {
  check_eta(eta);
  if (!(d >= 0.0)) throw std::domain_error("distance d must be nonnegative");
  const ServingShell shell = serving_shell(p, eta);
  if (shell.r_max <= shell.r_min) return d < shell.r_min ? 0.0 : 1.0;  // unit step at eta == 0
  if (d < shell.r_min) return 0.0;
  if (d >= shell.r_max) return 1.0;
  return (d - shell.r_min) * (d + shell.r_min) / shell.norm;
}

double serving_distance_pdf(const SystemParams& p, double eta, double d) {
  check_eta(eta);
  if (!(d >= 0.0)) throw std::domain_error("distance d must be nonnegative");
  const ServingShell shell = serving_shell(p, eta);
  if (shell.r_max <= shell.r_min) {
    return d == shell.r_min ? std::numeric_limits<double>::infinity() : 0.0;
  }
  if (d < shell.r_min || d > shell.r_max) return 0.0;
  return 2.0 * d / shell.norm;
}

double lowest_serving_altitude(const SystemParams& p, double eta) {
  check_eta(eta);
  const ConeTrig t = cone_trig(eta);
  if (t.cos_ == 0.0) return 0.0;
  const double cos2 = t.cos_ * t.cos_;
  const double re = p.earth_radius_km;
  const double rs = p.sat_radius_km;
  return cos2 * (std::sqrt(re * re + (rs * rs - re * re) / cos2) - re);
}

double avg_uts_per_sap(const SystemParams& p, double eta) {
  check_eta(eta);
  const ConeTrig t = cone_trig(eta);
  if (t.sin2 == 0.0) return 0.0;  // cap height vanishes with the cone
  const double re = p.earth_radius_km;
  const double rs = p.sat_radius_km;
  const double q = radical(p, t.sin2);
  return 2.0 * std::numbers::pi * re * p.ut_density_per_km2 *
         (re - (re * re / rs) * t.sin2 - re * q * t.cos_ / rs);
}

double cap_area(const SystemParams& p, double r) {
  const double re = p.earth_radius_km;
  const double rs = p.sat_radius_km;
  if (!(r >= rs - re && r <= rs + re)) {
    throw std::domain_error("cap radius r must lie in [Rs-Re, Rs+Re], got " + std::to_string(r));
  }
  return 2.0 * std::numbers::pi * (rs - re - ((rs * rs - re * re) - r * r) / (2.0 * re)) * rs;
}

}  // namespace comsat
