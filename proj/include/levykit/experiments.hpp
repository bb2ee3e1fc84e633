#pragma once
// Reusable experiment drivers: the resolvent-estimate rate studies and the reference
// filtering demonstration scenario. Both the command-line tool and the acceptance suite
// run exactly this code, so published numbers and gate numbers cannot drift apart.
//
// Rate studies, all on mark-driven solutions u = integral of the damped flow against the
// compensated measure, inputs band-limited so every probed frequency sits in the
// lambda-dominated regime:
//   decay      ||u||_{a',b';p} against lambda, expected log-log slope -1/p
//   increment  ||u(t0 + d) - u(t0)||_{a',b';p} against d, expected slope 1/p
//   bounded    ||u||_{a,b;p} / ||g||_{a',b';r,p} across input families, expected stable
// with a' = a (1 - 1/p) and b' = b: the solution gains a/p orders over the input.

#include <cstdint>
#include <vector>

#include "levykit/filtering.hpp"
#include "levykit/grid.hpp"
#include "levykit/lp.hpp"
#include "levykit/model.hpp"

namespace levykit {

struct RateStudy {
  std::vector<double> xs;
  std::vector<double> values;
  double slope = 0.0;  // least-squares slope of log value against log x
};

struct BoundednessStudy {
  std::vector<double> ratios;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
};

struct EstimateSuiteConfig {
  double p = 2.0;
  double r = 2.0;
  double beta = 0.25;
  std::vector<double> lambdas = {4.0, 16.0, 64.0, 256.0, 1024.0};
  double increment_lambda = 2.0;
  std::vector<int> increment_exponents = {3, 4, 5, 6, 7};  // displacements 2^-k * horizon
  double boundedness_lambda = 4.0;
  int boundedness_families = 5;
  std::size_t paths = 2000;
  std::uint64_t seed = 1;
  double dt = 1.0 / 64.0;
  double band_limit = 0.5;  // input spectra supported in |xi| < band_limit
};

struct EstimateSuiteResult {
  RateStudy decay;
  RateStudy increment;
  BoundednessStudy boundedness;
  double alpha_prime = 0.0;
  double beta_prime = 0.0;
};

EstimateSuiteResult run_estimate_suite(const StableModel& model, const FrequencyGrid& grid,
                                       const EstimateSuiteConfig& config);

double fit_log_slope(const std::vector<double>& xs, const std::vector<double>& values);

// real field whose transform is amplitude * B(|xi| / width) carried to the point `shift`
SpectralField band_limited_field(const FrequencyGrid& grid, double width, double amplitude,
                                 const Vec2& shift);

// indexed family of bounded deterministic mark integrands g(t, v) for the moment checks
std::function<double(double, std::size_t)> moment_integrand(int index);

// the pinned filtering demonstration: truncated 1.5-stable signal on the line, three
// observation channels with Gaussian-bump rates, unit horizon
FilterScenario demo_filter_scenario();
FrequencyGrid demo_filter_grid();

}  // namespace levykit
