#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "comsat/errors.hpp"

namespace comsat {

/// Knobs for the adaptive Gauss-Kronrod integration used by the analytic
/// module, plus the truncation policy of the improper rate integral.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 200;
  double rate_tail_eps = 1e-7;  // stop the rate integral once the integrand falls below this
  double rate_t_max = 60.0;     // hard cap on the outer integration variable (bits/s/Hz)

  void validate() const {
    if (!(rel_tol > 0.0 && abs_tol > 0.0 && max_subdivisions > 0 && rate_tail_eps > 0.0 &&
          rate_tail_eps < 1.0 && rate_t_max > 0.0)) {
      throw std::invalid_argument("QuadratureSpec fields must be strictly positive (rate_tail_eps < 1)");
    }
  }
};

/// Adaptive quadrature of f over [a, b]. Throws numeric_error if the error
/// estimate cannot be brought under max(abs_tol, rel_tol*|result|).
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (a == b) return 0.0;
  const int depth = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(spec.max_subdivisions)))));
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, depth, spec.rel_tol, &err);
  if (!(err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) * 10.0)) {
    throw numeric_error("quadrature did not converge: error estimate " + std::to_string(err));
  }
  return value;
}

}  // namespace comsat
