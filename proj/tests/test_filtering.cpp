#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "levykit/experiments.hpp"
#include "levykit/field.hpp"
#include "levykit/filtering.hpp"
#include "levykit/kernel.hpp"
#include "levykit/model.hpp"
#include "levykit/prm.hpp"
#include "levykit/rng.hpp"
#include "levykit/sphere.hpp"
#include "levykit/symbol.hpp"

using namespace levykit;

namespace {

StableModel asymmetric_signal() {
  ModelCoeffs c;
  c.measure = SphereMeasure::line(2.0, 1.0);
  auto model = StableModel::constant(1.5, 1, c, 1.0, 8.0);
  calibrate_constant(model);
  return model;
}

ObservationModel flat_rate(double level, std::vector<double> weights) {
  ObservationModel obs;
  obs.mark_weights = std::move(weights);
  obs.rate = [level](const Vec2&, std::size_t) { return level; };
  obs.rate_lower = level;
  obs.rate_upper = level;
  return obs;
}

std::vector<double> prior_values(const GaussianPrior& prior, const FrequencyGrid& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = grid.point(i)[0] - prior.center[0];
    v[i] = std::exp(-x * x / (2.0 * prior.stddev * prior.stddev)) /
           (prior.stddev * std::sqrt(2.0 * M_PI));
  }
  return v;
}

}  // namespace

TEST_CASE("unit observation rate reduces the filter to the adjoint heat flow") {
  FilterScenario sc{asymmetric_signal(), flat_rate(1.0, {1.0, 0.5}), GaussianPrior{{0.4, 0.0}, 1.0},
                    1e-3, 20.0};
  FrequencyGrid grid(1, 1024, 30.0);

  // events are present but carry no information at rate 1
  std::vector<PRMEvent> events{{0.21, 0}, {0.55, 1}, {0.8, 0}};
  auto result = zakai_filter(sc, events, grid);
  CHECK(result.total_mass == doctest::Approx(1.0).epsilon(1e-10));

  // independent route: discrete circular convolution of the prior with the
  // increment density, evaluated entirely in physical space
  auto kernel = heat_density(sc.signal, 0.0, sc.signal.horizon(), grid);
  auto kvals = kernel.physical();
  auto pvals = prior_values(sc.prior, grid);
  int n = grid.n;
  std::vector<double> expected(grid.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
      int j = ((i - m + n / 2) % n + n) % n;
      acc += pvals[m] * kvals[j];
    }
    expected[i] = acc * grid.spacing();
  }

  auto got = result.density.physical();
  double scale = std::exp(result.log_mass);
  double peak = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    peak = std::max(peak, std::abs(expected[i]));
    worst = std::max(worst, std::abs(scale * got[i] - expected[i]));
  }
  REQUIRE(peak > 0.0);
  CHECK(worst < 1e-8 * peak);
}

TEST_CASE("constant informative rate decays the mass at the exact exponential") {
  double level = 1.3;
  FilterScenario sc{asymmetric_signal(), flat_rate(level, {1.0, 0.5}),
                    GaussianPrior{{0.0, 0.0}, 1.0}, 1e-3, 20.0};
  FrequencyGrid grid(1, 512, 30.0);
  auto result = zakai_filter(sc, {}, grid);
  double expected = std::exp(-(level - 1.0) * 1.5 * sc.signal.horizon());
  CHECK(result.total_mass == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("splitting error decays at second order in the substep") {
  auto sc_base = demo_filter_scenario();
  FrequencyGrid grid(1, 1024, 30.0);
  std::vector<PRMEvent> events{{0.13, 0}, {0.37, 2}, {0.71, 1}};

  auto density_at = [&](double dt) {
    FilterScenario sc = sc_base;
    sc.dt = dt;
    auto r = zakai_filter(sc, events, grid);
    auto v = r.density.physical();
    double scale = std::exp(r.log_mass);
    for (auto& x : v) x *= scale;
    return v;
  };

  auto reference = density_at(1.0 / 1600.0);
  auto err = [&](double dt) {
    auto v = density_at(dt);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(v[i] - reference[i]));
    return worst;
  };

  double e1 = err(1.0 / 50.0);
  double e2 = err(1.0 / 100.0);
  double e3 = err(1.0 / 200.0);
  CHECK(e1 / e2 > 2.8);
  CHECK(e1 / e2 < 5.5);
  CHECK(e2 / e3 > 2.8);
  CHECK(e2 / e3 < 5.5);
}

TEST_CASE("spectral and particle routes agree on the demo posterior") {
  auto sc = demo_filter_scenario();
  auto grid = demo_filter_grid();

  Rng sim_rng(42);
  auto realization = simulate_scenario(sc, sim_rng);
  REQUIRE(!realization.observations.empty());

  auto zakai = zakai_filter(sc, realization.observations, grid);
  Rng pf_rng(4242);
  auto pf = particle_filter(sc, realization.observations, 4000, pf_rng);

  CHECK(zakai.moments.mass > 0.95);
  CHECK(pf.moments.mass > 0.95);
  double gap = std::abs(zakai.moments.mean[0] - pf.moments.mean[0]);
  CHECK(gap < 3.0 * pf.mean_stderr + 0.01);
  CHECK(std::abs(zakai.moments.variance - pf.moments.variance) <
        3.0 * pf.variance_stderr + 0.2);
  CHECK(pf.ess > 400.0);
}

TEST_CASE("particle filter is reproducible for a fixed seed") {
  auto sc = demo_filter_scenario();
  auto grid = demo_filter_grid();
  Rng sim_rng(7);
  auto realization = simulate_scenario(sc, sim_rng);
  Rng a(99), b(99);
  auto ra = particle_filter(sc, realization.observations, 500, a);
  auto rb = particle_filter(sc, realization.observations, 500, b);
  CHECK(ra.moments.mean[0] == rb.moments.mean[0]);
  CHECK(ra.moments.variance == rb.moments.variance);
  CHECK(ra.ess == rb.ess);
}

TEST_CASE("total mass is a reference-measure martingale across observation draws") {
  auto sc = demo_filter_scenario();
  sc.dt = 2e-3;
  FrequencyGrid grid(1, 1024, 30.0);
  MarkSpace reference{sc.observation.mark_weights};

  const std::size_t runs = 16;
  std::vector<double> masses(runs);
  double mean = 0.0;
  for (std::size_t k = 0; k < runs; ++k) {
    Rng rng(path_seed(1234, k));
    auto events = sample_prm(reference, sc.signal.horizon(), rng);
    masses[k] = zakai_filter(sc, events, grid).total_mass;
    mean += masses[k];
  }
  mean /= static_cast<double>(runs);
  double var = 0.0;
  for (double m : masses) var += (m - mean) * (m - mean);
  var /= static_cast<double>(runs - 1);
  double sem = std::sqrt(var / static_cast<double>(runs));
  CHECK(std::abs(mean - 1.0) < 4.0 * std::max(sem, 1e-3));
  // second moment of the exponential martingale: exp of the flow-averaged
  // (rho - 1)^2 intensity, a few units here; guard only against blow-up
  CHECK(std::sqrt(var) < 25.0);
}

TEST_CASE("declared rate bounds are enforced on the grid") {
  auto sc = demo_filter_scenario();
  auto grid = demo_filter_grid();
  CHECK_NOTHROW(validate_observation(sc.observation, grid));

  ObservationModel lying = sc.observation;
  lying.rate_lower = 0.7;  // actual infimum on the grid is 0.6
  CHECK_THROWS_AS(validate_observation(lying, grid), std::invalid_argument);

  FilterScenario bad = sc;
  bad.moment_box = 64.0;  // beyond the grid half-width
  CHECK_THROWS_AS(zakai_filter(bad, {}, grid), std::invalid_argument);

  std::vector<PRMEvent> unsorted{{0.5, 0}, {0.2, 1}};
  CHECK_THROWS_AS(zakai_filter(sc, unsorted, grid), std::invalid_argument);
}

TEST_CASE("simulated realizations respect the scenario bookkeeping") {
  auto sc = demo_filter_scenario();
  Rng rng(55);
  auto realization = simulate_scenario(sc, rng);
  REQUIRE(realization.times.size() >= 2);
  CHECK(realization.times.front() == 0.0);
  CHECK(realization.times.back() == doctest::Approx(sc.signal.horizon()));
  CHECK(realization.states.size() == realization.times.size());
  for (std::size_t i = 1; i < realization.observations.size(); ++i)
    CHECK(realization.observations[i].time >= realization.observations[i - 1].time);
  for (const auto& ev : realization.observations)
    CHECK(ev.mark < sc.observation.mark_weights.size());
}
