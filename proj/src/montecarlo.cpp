#include "comsat/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "comsat/analytic.hpp"

namespace comsat {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Substream tags so the estimators never share trial streams even when the
// caller reuses one master seed.
enum Stream : std::uint64_t { kCoverage = 0, kRateSe = 1, kNearest = 2, kConstellation = 3 };

void check_trials(long n) {
  if (n < 100) throw std::invalid_argument("n_trials must be at least 100");
}

int resolve_threads(int requested, long n_trials) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  return static_cast<int>(std::min<long>(n, n_trials));
}

// Runs body(i) for i in [0, n) on n_threads workers in disjoint blocks.
// Every i derives its own RNG substream, so the partition cannot change
// the results, only their wall-clock order.
template <class Body>
void parallel_trials(long n, int n_threads, const Body& body) {
  if (n_threads <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(n_threads));
  const long chunk = (n + n_threads - 1) / n_threads;
  for (int t = 0; t < n_threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

double binomial_half_width(double p, long n) {
  return kZ95 * std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

struct PathLoss {
  double alpha;
  bool square_law;

  explicit PathLoss(const SystemParams& p)
      : alpha(p.pathloss_exponent), square_law(p.pathloss_exponent == 2.0) {}

  double amplitude(double d) const {  // d^(-alpha/2)
    return square_law ? 1.0 / d : std::pow(d, -0.5 * alpha);
  }
};

}  // namespace

Constellation sample_constellation(const SystemParams& p, Rng& rng) {
  const double rs = p.sat_radius_km;
  const double mean = 4.0 * std::numbers::pi * rs * rs * p.sat_density_per_km2;
  std::poisson_distribution<long> count(mean);
  std::uniform_real_distribution<double> unit_z(-1.0, 1.0);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
  const long n = count(rng);
  Constellation c;
  c.positions.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double z = unit_z(rng);
    const double phi = azimuth(rng);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    c.positions.push_back({rs * rho * std::cos(phi), rs * rho * std::sin(phi), rs * z});
  }
  return c;
}

ClassifiedDistances classify(const Constellation& c, const SystemParams& p,
                             const ElevationGeometry& g) {
  ClassifiedDistances out;
  const double re = p.earth_radius_km;
  for (const auto& pos : c.positions) {
    const double dz = pos[2] - re;
    const double d = std::sqrt(pos[0] * pos[0] + pos[1] * pos[1] + dz * dz);
    if (d <= g.r_serv_max_km) {
      out.serving.push_back(d);
    } else if (d <= g.r_int_max_km) {
      out.interfering.push_back(d);
    }
    // below the horizon: dropped
  }
  return out;
}

void sample_visible_distances(const SystemParams& p, Rng& rng, std::vector<double>& out) {
  out.clear();
  const double re = p.earth_radius_km;
  const double rs = p.sat_radius_km;
  // Visible cap of the orbital sphere: z/Rs in [Re/Rs, 1].
  const double mean = p.sat_density_per_km2 * 2.0 * std::numbers::pi * rs * (rs - re);
  std::poisson_distribution<long> count(mean);
  std::uniform_real_distribution<double> unit(re / rs, 1.0);
  const long n = count(rng);
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double u = unit(rng);
    out.push_back(std::sqrt(std::max(0.0, rs * rs + re * re - 2.0 * re * rs * u)));
  }
}

TrialOutcome evaluate_trial(const SystemParams& p, std::span<const double> serving,
                            std::span<const double> interfering, Rng& rng, Fading fading) {
  const PathLoss pl(p);
  std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2.0);  // CN(0,1) components
  TrialOutcome out;
  out.serving_count = static_cast<int>(serving.size());
  double sum_re = 0.0;
  double sum_im = 0.0;
  for (const double d : serving) {
    const double a = pl.amplitude(d);
    if (fading == Fading::unit) {
      sum_re += a;
    } else {
      sum_re += a * gauss(rng);
      sum_im += a * gauss(rng);
    }
  }
  out.desired_power = sum_re * sum_re + sum_im * sum_im;
  double interference = 0.0;
  for (const double d : interfering) {
    const double a = pl.amplitude(d);
    double h2 = 1.0;
    if (fading == Fading::rayleigh) {
      const double hr = gauss(rng);
      const double hi = gauss(rng);
      h2 = hr * hr + hi * hi;
    }
    interference += a * a * h2;
  }
  out.interference_power = interference;
  out.sinr = out.serving_count == 0
                 ? 0.0
                 : p.link_gain * out.desired_power / (p.link_gain * interference + 1.0);
  return out;
}

TrialOutcome evaluate_nearest_trial(const SystemParams& p, std::span<const double> visible,
                                    Rng& rng, Fading fading) {
  TrialOutcome out;
  if (visible.empty()) return out;
  const PathLoss pl(p);
  const std::size_t nearest = static_cast<std::size_t>(
      std::min_element(visible.begin(), visible.end()) - visible.begin());
  std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2.0);
  double interference = 0.0;
  for (std::size_t k = 0; k < visible.size(); ++k) {
    const double a = pl.amplitude(visible[k]);
    double hr = 1.0;
    double hi = 0.0;
    if (fading == Fading::rayleigh) {
      hr = gauss(rng);
      hi = gauss(rng);
    }
    const double pw = a * a * (hr * hr + hi * hi);
    if (k == nearest) {
      out.desired_power = pw;
    } else {
      interference += pw;
    }
  }
  out.serving_count = 1;
  out.interference_power = interference;
  out.sinr = p.link_gain * out.desired_power / (p.link_gain * interference + 1.0);
  return out;
}

TrialOutcome run_trial(const SystemParams& p, const ElevationGeometry& g, Rng& rng) {
  thread_local std::vector<double> visible;
  thread_local std::vector<double> serving;
  thread_local std::vector<double> interfering;
  sample_visible_distances(p, rng, visible);
  serving.clear();
  interfering.clear();
  for (const double d : visible) {
    (d <= g.r_serv_max_km ? serving : interfering).push_back(d);
  }
  return evaluate_trial(p, serving, interfering, rng);
}

EstimatorResult estimate_coverage(const SystemParams& p, const ElevationGeometry& g,
                                  double gamma_th, long n_trials, std::uint64_t master_seed,
                                  int n_threads) {
  check_trials(n_trials);
  if (!(gamma_th >= 0.0)) throw std::domain_error("gamma_th must be nonnegative");
  std::vector<unsigned char> covered(static_cast<std::size_t>(n_trials));
  std::vector<unsigned char> empty(static_cast<std::size_t>(n_trials));
  parallel_trials(n_trials, resolve_threads(n_threads, n_trials), [&](long i) {
    Rng rng = make_trial_rng(master_seed, kCoverage, static_cast<std::uint64_t>(i));
    const TrialOutcome t = run_trial(p, g, rng);
    covered[static_cast<std::size_t>(i)] = t.sinr > gamma_th ? 1 : 0;
    empty[static_cast<std::size_t>(i)] = t.serving_count == 0 ? 1 : 0;
  });
  long n_cov = 0;
  long n_empty = 0;
  for (long i = 0; i < n_trials; ++i) {
    n_cov += covered[static_cast<std::size_t>(i)];
    n_empty += empty[static_cast<std::size_t>(i)];
  }
  EstimatorResult r;
  r.n_trials = n_trials;
  r.mean = static_cast<double>(n_cov) / static_cast<double>(n_trials);
  r.half_width_95 = binomial_half_width(r.mean, n_trials);
  r.empty_serving_fraction = static_cast<double>(n_empty) / static_cast<double>(n_trials);
  return r;
}

RateSeEstimate estimate_rate_and_se(const SystemParams& p, const ElevationGeometry& g,
                                    long n_trials, std::uint64_t master_seed, int n_threads) {
  check_trials(n_trials);
  std::vector<double> se(static_cast<std::size_t>(n_trials));
  std::vector<unsigned char> empty(static_cast<std::size_t>(n_trials));
  parallel_trials(n_trials, resolve_threads(n_threads, n_trials), [&](long i) {
    Rng rng = make_trial_rng(master_seed, kRateSe, static_cast<std::uint64_t>(i));
    const TrialOutcome t = run_trial(p, g, rng);
    se[static_cast<std::size_t>(i)] = std::log2(1.0 + t.sinr);
    empty[static_cast<std::size_t>(i)] = t.serving_count == 0 ? 1 : 0;
  });
  // Fixed-order reduction keeps the result independent of the worker count.
  double sum = 0.0;
  long n_empty = 0;
  for (long i = 0; i < n_trials; ++i) {
    sum += se[static_cast<std::size_t>(i)];
    n_empty += empty[static_cast<std::size_t>(i)];
  }
  const double mean = sum / static_cast<double>(n_trials);
  double ss = 0.0;
  for (long i = 0; i < n_trials; ++i) {
    const double d = se[static_cast<std::size_t>(i)] - mean;
    ss += d * d;
  }
  const double hw = kZ95 * std::sqrt(ss / static_cast<double>(n_trials - 1) /
                                     static_cast<double>(n_trials));
  RateSeEstimate out;
  out.se.mean = mean;
  out.se.half_width_95 = hw;
  out.se.n_trials = n_trials;
  out.se.empty_serving_fraction = static_cast<double>(n_empty) / static_cast<double>(n_trials);
  const double share = p.bandwidth_hz / ut_load(p, g.eta_rad);
  out.rate = out.se;
  out.rate.mean = share * mean;
  out.rate.half_width_95 = share * hw;
  return out;
}

EstimatorResult estimate_nearest_sat_coverage(const SystemParams& p, double gamma_th,
                                              long n_trials, std::uint64_t master_seed,
                                              int n_threads) {
  check_trials(n_trials);
  if (!(gamma_th >= 0.0)) throw std::domain_error("gamma_th must be nonnegative");
  std::vector<unsigned char> covered(static_cast<std::size_t>(n_trials));
  std::vector<unsigned char> empty(static_cast<std::size_t>(n_trials));
  parallel_trials(n_trials, resolve_threads(n_threads, n_trials), [&](long i) {
    Rng rng = make_trial_rng(master_seed, kNearest, static_cast<std::uint64_t>(i));
    thread_local std::vector<double> visible;
    sample_visible_distances(p, rng, visible);
    const TrialOutcome t = evaluate_nearest_trial(p, visible, rng);
    covered[static_cast<std::size_t>(i)] = t.sinr > gamma_th ? 1 : 0;
    empty[static_cast<std::size_t>(i)] = visible.empty() ? 1 : 0;
  });
  long n_cov = 0;
  long n_empty = 0;
  for (long i = 0; i < n_trials; ++i) {
    n_cov += covered[static_cast<std::size_t>(i)];
    n_empty += empty[static_cast<std::size_t>(i)];
  }
  EstimatorResult r;
  r.n_trials = n_trials;
  r.mean = static_cast<double>(n_cov) / static_cast<double>(n_trials);
  r.half_width_95 = binomial_half_width(r.mean, n_trials);
  r.empty_serving_fraction = static_cast<double>(n_empty) / static_cast<double>(n_trials);
  return r;
}

}  // namespace comsat
