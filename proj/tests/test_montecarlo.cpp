#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "comsat/analytic.hpp"
#include "comsat/montecarlo.hpp"
#include "comsat/stats.hpp"
#include "comsat/validate.hpp"

using namespace comsat;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams defaults() { return SystemParams{}; }

ElevationGeometry geom(const SystemParams& p, double eta) {
  return ElevationGeometry::from_cone_angle(p, eta);
}

}  // namespace

TEST_CASE("constellation sampling: count law and position norms") {
  const SystemParams p = defaults();
  const double expect = 4.0 * kPi * p.sat_radius_km * p.sat_radius_km * p.sat_density_per_km2;

  double total = 0.0;
  const long draws = 10000;
  for (long i = 0; i < draws; ++i) {
    Rng rng = make_trial_rng(1001, 0, static_cast<std::uint64_t>(i));
    const Constellation c = sample_constellation(p, rng);
    total += static_cast<double>(c.count());
    if (i == 0) {
      for (const auto& pos : c.positions) {
        const double norm = std::sqrt(pos[0] * pos[0] + pos[1] * pos[1] + pos[2] * pos[2]);
        REQUIRE(norm == doctest::Approx(p.sat_radius_km).epsilon(1e-9 / p.sat_radius_km));
      }
    }
  }
  CHECK(total / static_cast<double>(draws) == doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("constellation sampling: vanishing density leaves the sphere empty") {
  SystemParams p = defaults();
  p.sat_density_per_km2 = 1e-12;
  int empty = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng = make_trial_rng(1002, 0, static_cast<std::uint64_t>(i));
    if (sample_constellation(p, rng).count() == 0) ++empty;
  }
  CHECK(empty >= 99);
}

TEST_CASE("constellation sampling: z coordinate is uniform") {
  const SystemParams p = defaults();
  std::vector<double> zs;
  std::uint64_t i = 0;
  while (zs.size() < 100000) {
    Rng rng = make_trial_rng(1003, 0, i++);
    for (const auto& pos : sample_constellation(p, rng).positions) {
      zs.push_back(pos[2] / p.sat_radius_km);
    }
  }
  zs.resize(100000);
  const double stat = ks_statistic(std::move(zs), [](double z) { return (z + 1.0) / 2.0; });
  CHECK(stat < 0.01);
}

TEST_CASE("constellation count follows the Poisson law (chi-square)") {
  const CheckResult r = checks::poisson_count_chi2(defaults(), defaults(), 10000, 77);
  INFO(r.details);
  CHECK(r.pass);
}

TEST_CASE("classification: zenith, horizon, and the serving fraction") {
  const SystemParams p = defaults();
  const ElevationGeometry g = geom(p, kPi / 4);

  Constellation c;
  c.positions.push_back({0.0, 0.0, p.sat_radius_km});  // at the zenith
  const double below_z = p.earth_radius_km - 1.0;      // just below the horizon plane
  c.positions.push_back(
      {std::sqrt(p.sat_radius_km * p.sat_radius_km - below_z * below_z), 0.0, below_z});
  const ClassifiedDistances cd = classify(c, p, g);
  REQUIRE(cd.serving.size() == 1);
  CHECK(cd.serving[0] == doctest::Approx(p.sat_radius_km - p.earth_radius_km).epsilon(1e-12));
  CHECK(cd.interfering.empty());

  // Fraction of visible satellites that serve == ratio of cap areas,
  // both proportional to r^2 - r_min^2.
  const auto r2 = [&](double r) { return r * r - g.r_serv_min_km * g.r_serv_min_km; };
  const double expect = r2(g.r_serv_max_km) / r2(g.r_int_max_km);
  long serving = 0;
  long visible = 0;
  for (long i = 0; i < 20000; ++i) {
    Rng rng = make_trial_rng(1004, 0, static_cast<std::uint64_t>(i));
    const ClassifiedDistances k = classify(sample_constellation(p, rng), p, g);
    serving += static_cast<long>(k.serving.size());
    visible += static_cast<long>(k.serving.size() + k.interfering.size());
  }
  const double frac = static_cast<double>(serving) / static_cast<double>(visible);
  CHECK(frac == doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("trial evaluation: single-satellite reduction with unit fading") {
  const SystemParams p = defaults();
  const double d0 = 700.0;
  const std::vector<double> serving = {d0};
  Rng rng(1);
  const TrialOutcome t = evaluate_trial(p, serving, {}, rng, Fading::unit);
  CHECK(t.serving_count == 1);
  CHECK(t.interference_power == 0.0);
  CHECK(t.desired_power == doctest::Approx(std::pow(d0, -p.pathloss_exponent)).epsilon(1e-12));
  CHECK(t.sinr ==
        doctest::Approx(p.link_gain * std::pow(d0, -p.pathloss_exponent)).epsilon(1e-12));
}

TEST_CASE("trial evaluation: frozen fading gives the coherent sum") {
  const SystemParams p = defaults();
  const std::vector<double> serving = {520.0, 600.0, 655.0};
  Rng rng(2);
  const TrialOutcome t = evaluate_trial(p, serving, {}, rng, Fading::unit);
  double amp = 0.0;
  for (const double d : serving) amp += std::pow(d, -p.pathloss_exponent / 2.0);
  CHECK(t.desired_power == doctest::Approx(amp * amp).epsilon(1e-12));
}

TEST_CASE("trial outcome invariants") {
  const SystemParams p = defaults();
  const ElevationGeometry g = geom(p, kPi / 4);
  int empties = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = make_trial_rng(1005, 0, static_cast<std::uint64_t>(i));
    const TrialOutcome t = run_trial(p, g, rng);
    CHECK(t.desired_power >= 0.0);
    CHECK(t.interference_power >= 0.0);
    if (t.serving_count == 0) {
      ++empties;
      CHECK(t.desired_power == 0.0);
      CHECK(t.sinr == 0.0);
    } else {
      CHECK(t.sinr == doctest::Approx(p.link_gain * t.desired_power /
                                      (p.link_gain * t.interference_power + 1.0))
                          .epsilon(1e-15));
    }
  }
  CHECK(empties < 30);  // empty fraction is ~2.5% here
}

TEST_CASE("desired power is exponential conditional on the geometry") {
  const CheckResult r =
      checks::desired_power_exponential_ks(defaults(), kPi / 4, 100000, 31337);
  INFO(r.details);
  CHECK(r.statistic < 0.01);
}

TEST_CASE("empirical interference transform matches the closed form") {
  const CheckResult r = checks::laplace_match(defaults(), defaults(), kPi / 4, 200000, 2024);
  INFO(r.details, " worst rel err ", r.statistic);
  CHECK(r.statistic < 0.005);
}

TEST_CASE("coverage estimator: zero threshold complements the empty fraction") {
  const SystemParams p = defaults();
  const ElevationGeometry g = geom(p, kPi / 4);
  const EstimatorResult r = estimate_coverage(p, g, 0.0, 2000, 555);
  CHECK(r.mean == 1.0 - r.empty_serving_fraction);
  CHECK(r.n_trials == 2000);
  CHECK(r.half_width_95 > 0.0);
}

TEST_CASE("coverage estimator: saturates at low thresholds for wide cones") {
  const SystemParams p = defaults();
  const EstimatorResult r = estimate_coverage(p, geom(p, kPi / 3), 1e-5, 10000, 556);
  CHECK(r.mean >= 0.99);
}

TEST_CASE("coverage estimator: preconditions") {
  const SystemParams p = defaults();
  const ElevationGeometry g = geom(p, kPi / 4);
  CHECK_THROWS_AS(estimate_coverage(p, g, 1.0, 99, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_rate_and_se(p, g, 50, 1), std::invalid_argument);
  CHECK_THROWS_AS(estimate_nearest_sat_coverage(p, 1.0, 10, 1), std::invalid_argument);
}

TEST_CASE("estimators are deterministic and worker-count independent") {
  const SystemParams p = defaults();
  const ElevationGeometry g = geom(p, kPi / 4);
  const EstimatorResult a = estimate_coverage(p, g, 0.5, 500, 909, 1);
  const EstimatorResult b = estimate_coverage(p, g, 0.5, 500, 909, 2);
  const EstimatorResult c = estimate_coverage(p, g, 0.5, 500, 909, 4);
  CHECK(a.mean == b.mean);
  CHECK(b.mean == c.mean);
  CHECK(a.empty_serving_fraction == c.empty_serving_fraction);

  const RateSeEstimate r1 = estimate_rate_and_se(p, g, 500, 909, 1);
  const RateSeEstimate r3 = estimate_rate_and_se(p, g, 500, 909, 3);
  CHECK(r1.se.mean == r3.se.mean);  // bit-identical fixed-order reduction
  CHECK(r1.rate.mean == r3.rate.mean);
  CHECK(r1.se.half_width_95 == r3.se.half_width_95);

  const EstimatorResult n1 = estimate_nearest_sat_coverage(p, 0.5, 400, 909, 1);
  const EstimatorResult n2 = estimate_nearest_sat_coverage(p, 0.5, 400, 909, 2);
  CHECK(n1.mean == n2.mean);
}

TEST_CASE("rate estimator: zero SINR everywhere gives zero rate") {
  SystemParams p = defaults();
  p.sat_density_per_km2 = 1e-13;  // essentially no satellites
  const ElevationGeometry g = geom(p, kPi / 4);
  const RateSeEstimate r = estimate_rate_and_se(p, g, 300, 777);
  CHECK(r.se.mean == 0.0);
  CHECK(r.rate.mean == 0.0);
  CHECK(r.se.empty_serving_fraction == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("rate estimator scales linearly in the bandwidth") {
  SystemParams p = defaults();
  const ElevationGeometry g = geom(p, kPi / 4);
  const RateSeEstimate base = estimate_rate_and_se(p, g, 400, 321);
  p.bandwidth_hz *= 2.0;
  const RateSeEstimate twice = estimate_rate_and_se(p, g, 400, 321);
  CHECK(twice.se.mean == base.se.mean);  // trials do not involve the bandwidth
  CHECK(twice.rate.mean == doctest::Approx(2.0 * base.rate.mean).epsilon(1e-15));
}

TEST_CASE("simulated spectral efficiency tracks the closed form") {
  // The residual is the mean-field substitution error of the closed form,
  // a systematic ~3.1% at this cone angle (the simulator counts empty
  // serving sets as outage, the closed form cannot). An estimator bug
  // would blow far past this bound.
  const SystemParams p = defaults();
  const ElevationGeometry g = geom(p, kPi / 4);
  const RateSeEstimate mc = estimate_rate_and_se(p, g, 100000, 828282);
  const double analytic = spectral_efficiency(p, g).value;
  CHECK(std::abs(mc.se.mean - analytic) / analytic < 0.05);
  CHECK(mc.se.mean < analytic);  // the closed form sits above the simulation

  // At a wider cone the substitution error shrinks inside the 3% band.
  const ElevationGeometry wide = ElevationGeometry::from_elevation_deg(p, 15.0);
  const RateSeEstimate mc_wide = estimate_rate_and_se(p, wide, 100000, 828283);
  const double analytic_wide = spectral_efficiency(p, wide).value;
  CHECK(std::abs(mc_wide.se.mean - analytic_wide) / analytic_wide < 0.03);
}

TEST_CASE("nearest-satellite baseline: single-visible trial matches joint transmission") {
  const SystemParams p = defaults();
  const std::vector<double> one = {640.0};
  Rng a(42);
  Rng b(42);
  const TrialOutcome coms = evaluate_trial(p, one, {}, a);
  const TrialOutcome nearest = evaluate_nearest_trial(p, one, b);
  CHECK(nearest.serving_count == 1);
  CHECK(nearest.sinr == doctest::Approx(coms.sinr).epsilon(1e-12));

  Rng c(43);
  const TrialOutcome none = evaluate_nearest_trial(p, {}, c);
  CHECK(none.sinr == 0.0);
  CHECK(none.serving_count == 0);
}

TEST_CASE("nearest-satellite baseline: nearest serves, the rest interfere") {
  const SystemParams p = defaults();
  const std::vector<double> visible = {900.0, 520.0, 2100.0};
  Rng rng(7);
  const TrialOutcome t = evaluate_nearest_trial(p, visible, rng, Fading::unit);
  CHECK(t.desired_power == doctest::Approx(std::pow(520.0, -2.0)).epsilon(1e-12));
  CHECK(t.interference_power ==
        doctest::Approx(std::pow(900.0, -2.0) + std::pow(2100.0, -2.0)).epsilon(1e-12));
}

TEST_CASE("nearest-satellite baseline: outage only without visible satellites") {
  const SystemParams p = defaults();
  const EstimatorResult r = estimate_nearest_sat_coverage(p, 1e-5, 5000, 4242);
  CHECK(r.empty_serving_fraction == 0.0);  // ~108 visible on average
  CHECK(r.mean > 0.99);
}

TEST_CASE("confidence interval calibration at a reference point") {
  // Reference point chosen where the closed form's model error is far below
  // the CI width, so the interval is tested, not the approximation.
  const SystemParams p = defaults();
  const ElevationGeometry g = ElevationGeometry::from_elevation_deg(p, 15.0);
  const double gamma = std::pow(10.0, -1.0);  // -10 dB
  const double truth = coverage_probability(p, g, gamma);
  int hits = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const EstimatorResult r =
        estimate_coverage(p, g, gamma, 1000, 6000 + static_cast<std::uint64_t>(rep));
    if (std::abs(truth - r.mean) <= r.half_width_95) ++hits;
  }
  CHECK(hits >= 90);
}
