#pragma once

#include "comsat/geometry.hpp"
#include "comsat/params.hpp"
#include "comsat/quadrature.hpp"

namespace comsat {

struct CoverageResult {
  double gamma_th = 0.0;      // linear SINR threshold
  double probability = 0.0;   // laplace_value * noise_factor
  double laplace_value = 0.0; // interference Laplace transform at s
  double noise_factor = 0.0;  // exp(-s / link_gain)
};

/// Value of an improper integral together with the bound on the mass
/// discarded by truncating it.
struct TailBounded {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Expected serving-channel sum E{ sum over serving satellites of d^-alpha }
/// = 2*pi*lambda_s*(Rs/Re) * integral of r^(1-alpha) over the serving shell,
/// in closed form (log branch at alpha == 2). Its reciprocal is the rate
/// parameter of the exponentially distributed joint desired power.
/// Throws no_serving_region when the shell has zero width (eta == 0).
double mean_channel_sum(const SystemParams& p, const ElevationGeometry& g);

/// Which algebraic form of the interference Laplace exponent to evaluate.
/// The substituted form integrates 1/(1+u^(alpha/2)) du over
/// [s^(-2/a)*r_min^2, s^(-2/a)*r_max^2]; the radial form integrates
/// s*r/(s+r^alpha) dr over the annulus. They are the same quantity.
enum class LaplaceForm { automatic, substituted, radial };

double interference_laplace_exponent(const SystemParams& p, const ElevationGeometry& g, double s,
                                     const QuadratureSpec& quad = {},
                                     LaplaceForm form = LaplaceForm::automatic);

/// E{exp(-s*I)} for the aggregate interference I of the annulus; in (0, 1],
/// and exactly 1 when the annulus is empty (eta == pi/2). Requires s > 0.
double interference_laplace(const SystemParams& p, const ElevationGeometry& g, double s,
                            const QuadratureSpec& quad = {});

/// P{SINR > gamma_th} for the typical user under joint transmission, with
/// the serving-channel sum replaced by its mean: s = gamma_th /
/// mean_channel_sum, coverage = laplace(s) * exp(-s/link_gain).
CoverageResult coverage_detail(const SystemParams& p, const ElevationGeometry& g, double gamma_th,
                               const QuadratureSpec& quad = {});
double coverage_probability(const SystemParams& p, const ElevationGeometry& g, double gamma_th,
                            const QuadratureSpec& quad = {});

/// Number of users sharing one satellite's band: the typical user plus the
/// mean cap population avg_uts_per_sap.
double ut_load(const SystemParams& p, double eta_rad);

/// integral over t of P{SINR > 2^t - 1}, in bits/s/Hz, truncated per the
/// QuadratureSpec tail policy (the bound on the discarded tail is reported).
TailBounded spectral_efficiency(const SystemParams& p, const ElevationGeometry& g,
                                const QuadratureSpec& quad = {});

/// Per-user rate bandwidth_hz / ut_load * spectral_efficiency, bits/s.
TailBounded ergodic_rate(const SystemParams& p, const ElevationGeometry& g,
                         const QuadratureSpec& quad = {});

}  // namespace comsat
