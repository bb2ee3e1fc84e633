#pragma once
// Filtering of a jump-diffusion signal from marked point-process observations whose
// intensity is rate(x, j) * weight_j, with rate bounded away from 0 and infinity.
//
// Two independent routes to the conditional law:
//   - a spectral solver for the unnormalized conditional density: between observation
//     events the density follows the adjoint heat flow with a multiplicative decay
//     exp(-int (rate - 1) dPi) handled by Strang splitting; at an event with mark j the
//     density is reweighted pointwise by rate(., j);
//   - a particle system under the reference measure: particles follow the signal law,
//     carry log-weights -int (rate(X_s, .) - 1) dPi ds plus log rate(X_{t-}, j) at events,
//     and are resampled systematically when the effective sample size halves.
// The total unnormalized mass from the spectral route is a reference-measure martingale;
// its ensemble mean equals the prior mass, which the tests check.
//
// Posterior moments from both routes are restricted to the same centered box so the
// periodic wrap-around and heavy tails cannot bias the comparison.

#include <cstdint>
#include <functional>
#include <vector>

#include "levykit/field.hpp"
#include "levykit/grid.hpp"
#include "levykit/model.hpp"
#include "levykit/prm.hpp"
#include "levykit/rng.hpp"
#include "levykit/stable.hpp"

namespace levykit {

struct ObservationModel {
  std::vector<double> mark_weights;                      // Pi({j})
  std::function<double(const Vec2&, std::size_t)> rate;  // rate(x, j)
  double rate_lower = 0.0;                               // declared bounds for validation
  double rate_upper = 0.0;
};

struct GaussianPrior {
  Vec2 center{0.0, 0.0};
  double stddev = 1.0;
};

struct FilterScenario {
  StableModel signal;  // calibrated for alpha < 2
  ObservationModel observation;
  GaussianPrior prior;
  double dt = 1e-3;          // substep for the splitting and the particle weights
  double moment_box = 10.0;  // moments restricted to |x_i| <= moment_box (absolute)
};

// checks the declared rate bounds on every grid point and mark
void validate_observation(const ObservationModel& obs, const FrequencyGrid& grid);

struct SignalRealization {
  std::vector<double> times;           // substep grid, 0 .. horizon
  std::vector<Vec2> states;            // signal at those times
  std::vector<PRMEvent> observations;  // accepted observation events, sorted
};

SignalRealization simulate_scenario(const FilterScenario& scenario, Rng& rng);

struct BoxMoments {
  Vec2 mean{0.0, 0.0};
  double variance = 0.0;  // of the first coordinate
  double mass = 0.0;      // fraction of (normalized) mass inside the box
};

struct ZakaiResult {
  SpectralField density;   // unnormalized conditional density at the horizon, rescaled
  double log_mass = 0.0;   // log of the factored-out scale
  double total_mass = 0.0; // exp(log_mass) * current mass: the martingale statistic
  BoxMoments moments;      // normalized and box-restricted
};

ZakaiResult zakai_filter(const FilterScenario& scenario,
                         const std::vector<PRMEvent>& observations, const FrequencyGrid& grid);

struct ParticleResult {
  BoxMoments moments;
  double ess = 0.0;             // at the horizon, before any final resampling
  double mean_stderr = 0.0;     // weighted stderr of moments.mean[0]
  double variance_stderr = 0.0; // weighted stderr of moments.variance
};

ParticleResult particle_filter(const FilterScenario& scenario,
                               const std::vector<PRMEvent>& observations, std::size_t particles,
                               Rng& rng);

}  // namespace levykit
