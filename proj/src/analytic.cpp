#include "comsat/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "comsat/errors.hpp"

namespace comsat {

namespace {

constexpr double kLn2 = 0.6931471805599453;

}  // namespace

double mean_channel_sum(const SystemParams& p, const ElevationGeometry& g) {
  const double r_lo = g.r_serv_min_km;
  const double r_hi = g.r_serv_max_km;
  if (r_hi <= r_lo) throw no_serving_region();
  const double c = 2.0 * std::numbers::pi * p.sat_density_per_km2 *
                   (p.sat_radius_km / p.earth_radius_km);
  const double a = p.pathloss_exponent;
  if (std::abs(a - 2.0) < 1e-9) return c * std::log(r_hi / r_lo);
  return c * (std::pow(r_hi, 2.0 - a) - std::pow(r_lo, 2.0 - a)) / (2.0 - a);
}

double interference_laplace_exponent(const SystemParams& p, const ElevationGeometry& g, double s,
                                     const QuadratureSpec& quad, LaplaceForm form) {
  if (!(s > 0.0)) throw std::domain_error("Laplace argument s must be positive");
  const double r_lo = g.r_int_min_km;
  const double r_hi = g.r_int_max_km;
  if (r_lo >= r_hi) return 0.0;
  const double a = p.pathloss_exponent;
  const double scale = std::numbers::pi * p.sat_density_per_km2 *
                       (p.sat_radius_km / p.earth_radius_km);
  const double u_lo = std::pow(s, -2.0 / a) * r_lo * r_lo;
  if (form == LaplaceForm::automatic) {
    // The substituted integrand steepens at the origin for large s; move to
    // the bounded radial form once the lower limit collapses.
    form = u_lo < 1e-6 ? LaplaceForm::radial : LaplaceForm::substituted;
  }
  if (form == LaplaceForm::substituted) {
    const double u_hi = std::pow(s, -2.0 / a) * r_hi * r_hi;
    const double half_a = a / 2.0;
    const double inner =
        integrate([half_a](double u) { return 1.0 / (1.0 + std::pow(u, half_a)); }, u_lo, u_hi, quad);
    return scale * std::pow(s, 2.0 / a) * inner;
  }
  const double inner =
      integrate([s, a](double r) { return s * r / (s + std::pow(r, a)); }, r_lo, r_hi, quad);
  return 2.0 * scale * inner;
}

double interference_laplace(const SystemParams& p, const ElevationGeometry& g, double s,
                            const QuadratureSpec& quad) {
  if (g.r_int_min_km >= g.r_int_max_km) {
    if (!(s > 0.0)) throw std::domain_error("Laplace argument s must be positive");
    return 1.0;
  }
  return std::exp(-interference_laplace_exponent(p, g, s, quad));
}

CoverageResult coverage_detail(const SystemParams& p, const ElevationGeometry& g, double gamma_th,
                               const QuadratureSpec& quad) {
  if (!(gamma_th > 0.0)) throw std::domain_error("gamma_th must be positive");
  const double s = gamma_th / mean_channel_sum(p, g);
  CoverageResult r;
  r.gamma_th = gamma_th;
  r.laplace_value = interference_laplace(p, g, s, quad);
  r.noise_factor = std::exp(-s / p.link_gain);
  r.probability = r.laplace_value * r.noise_factor;
  return r;
}

double coverage_probability(const SystemParams& p, const ElevationGeometry& g, double gamma_th,
                            const QuadratureSpec& quad) {
  return coverage_detail(p, g, gamma_th, quad).probability;
}

double ut_load(const SystemParams& p, double eta_rad) {
  return 1.0 + avg_uts_per_sap(p, eta_rad);
}

TailBounded spectral_efficiency(const SystemParams& p, const ElevationGeometry& g,
                                const QuadratureSpec& quad) {
  quad.validate();
  // Forces the no-serving-region error up front rather than on the first
  // integrand evaluation.
  (void)mean_channel_sum(p, g);
  const auto integrand = [&](double t) {
    if (t <= 0.0) return 1.0;
    const double gamma = std::expm1(t * kLn2);
    if (gamma <= 0.0) return 1.0;  // subnormal t
    return coverage_probability(p, g, gamma, quad);
  };
  // The integrand decreases from 1; expand until it drops under the tail
  // threshold, then clip at the hard cap.
  double t_hi = 1.0;
  while (t_hi < quad.rate_t_max && integrand(t_hi) >= quad.rate_tail_eps) t_hi *= 2.0;
  t_hi = std::min(t_hi, quad.rate_t_max);
  TailBounded out;
  out.value = integrate(integrand, 0.0, t_hi, quad);
  out.tail_bound = quad.rate_tail_eps * quad.rate_t_max;
  return out;
}

TailBounded ergodic_rate(const SystemParams& p, const ElevationGeometry& g,
                         const QuadratureSpec& quad) {
  const TailBounded se = spectral_efficiency(p, g, quad);
  const double share = p.bandwidth_hz / ut_load(p, g.eta_rad);
  return {share * se.value, share * se.tail_bound};
}

}  // namespace comsat
