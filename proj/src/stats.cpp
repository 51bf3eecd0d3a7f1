#include "comsat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace comsat {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double lo = f - static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n - f;
    sup = std::max({sup, lo, hi});
  }
  return sup;
}

ChiSquareResult chi_square_poisson(const std::vector<long>& draws, double mean) {
  if (draws.size() < 100) throw std::invalid_argument("chi_square_poisson: too few draws");
  if (!(mean > 0.0)) throw std::invalid_argument("chi_square_poisson: mean must be positive");
  const double n = static_cast<double>(draws.size());
  const double sigma = std::sqrt(mean);
  const long k_lo = std::max<long>(0, static_cast<long>(std::floor(mean - 6.0 * sigma)));
  const long k_hi = static_cast<long>(std::ceil(mean + 6.0 * sigma));

  // Poisson pmf over [k_lo, k_hi] by forward recurrence from the mode.
  std::vector<double> pmf(static_cast<std::size_t>(k_hi - k_lo + 1));
  {
    const long mode = static_cast<long>(std::floor(mean));
    const long anchor = std::clamp(mode, k_lo, k_hi);
    double log_p = anchor * std::log(mean) - mean - std::lgamma(static_cast<double>(anchor) + 1.0);
    pmf[static_cast<std::size_t>(anchor - k_lo)] = std::exp(log_p);
    for (long k = anchor + 1; k <= k_hi; ++k) {
      pmf[static_cast<std::size_t>(k - k_lo)] =
          pmf[static_cast<std::size_t>(k - 1 - k_lo)] * mean / static_cast<double>(k);
    }
    for (long k = anchor - 1; k >= k_lo; --k) {
      pmf[static_cast<std::size_t>(k - k_lo)] =
          pmf[static_cast<std::size_t>(k + 1 - k_lo)] * static_cast<double>(k + 1) / mean;
    }
  }

  std::vector<long> observed(pmf.size() + 2, 0);  // [below | k_lo..k_hi | above]
  for (const long d : draws) {
    if (d < k_lo) {
      ++observed.front();
    } else if (d > k_hi) {
      ++observed.back();
    } else {
      ++observed[static_cast<std::size_t>(d - k_lo + 1)];
    }
  }
  std::vector<double> expected(pmf.size() + 2, 0.0);
  double tail = 1.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    expected[i + 1] = n * pmf[i];
    tail -= pmf[i];
  }
  const double tail_mass = std::max(tail, 0.0) * n / 2.0;
  expected.front() = tail_mass;
  expected.back() = tail_mass;

  // Merge adjacent cells until every expected count reaches 5.
  std::vector<double> exp_m;
  std::vector<long> obs_m;
  double e_acc = 0.0;
  long o_acc = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    e_acc += expected[i];
    o_acc += observed[i];
    if (e_acc >= 5.0) {
      exp_m.push_back(e_acc);
      obs_m.push_back(o_acc);
      e_acc = 0.0;
      o_acc = 0;
    }
  }
  if (e_acc > 0.0 && !exp_m.empty()) {
    exp_m.back() += e_acc;
    obs_m.back() += o_acc;
  }
  if (exp_m.size() < 2) throw std::invalid_argument("chi_square_poisson: not enough cells");

  ChiSquareResult r;
  for (std::size_t i = 0; i < exp_m.size(); ++i) {
    const double d = static_cast<double>(obs_m[i]) - exp_m[i];
    r.statistic += d * d / exp_m[i];
  }
  r.dof = static_cast<int>(exp_m.size()) - 1;
  const boost::math::chi_squared dist(r.dof);
  r.critical_95 = boost::math::quantile(dist, 0.95);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

}  // namespace comsat
