#pragma once

#include <functional>
#include <vector>

namespace comsat {

/// One-sample Kolmogorov-Smirnov statistic sup|F_n - F| of samples against
/// the model CDF. Sorts a copy of the samples.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double critical_95 = 0.0;  // 95th percentile of chi^2(dof)
  double p_value = 0.0;

  bool pass_at_5pct() const { return statistic <= critical_95; }
};

/// Goodness-of-fit of integer draws against a Poisson(mean) law. Bins with
/// expected count below 5 are merged into their tails.
ChiSquareResult chi_square_poisson(const std::vector<long>& draws, double mean);

}  // namespace comsat
