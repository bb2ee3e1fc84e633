#pragma once
// Pathwise simulation of the driving process: compound-Poisson jumps of radius above a
// small threshold eps, the exact compensator drift for those jumps, and a Gaussian
// substitute whose covariance matches the discarded small-jump part. alpha = 2 is the
// pure diffusion branch.
//
// The threshold rule targets the distributional error of the substitution at the
// horizon scale r_ref = (symbol_scale * horizon)^{1/alpha}:
//   alpha in (1, 2): the total absolute third moment of the discarded jumps stays below
//                    tolerance * r_ref^3 (the variance is matched exactly);
//   alpha <= 1:      (eps / r_ref)^{2 - alpha} <= tolerance.
// Smoothing by the retained heavy part then pushes the CDF error well below Monte Carlo
// noise at the ensemble sizes used here; the empirical guard is that halving eps moves
// no test statistic. eps is chosen once per horizon, never per substep.

#include <cstdint>
#include <optional>
#include <vector>

#include "levykit/grid.hpp"
#include "levykit/model.hpp"
#include "levykit/rng.hpp"

namespace levykit {

struct JumpEvent {
  double time = 0.0;
  Vec2 displacement{0.0, 0.0};
};

struct StableSamplerOptions {
  std::optional<double> small_jump_radius;  // override the rule above
  double tolerance = 1e-3;
  double max_expected_jumps = 5e7;  // guard against runaway event counts
};

// the threshold rule; requires a calibrated model for alpha < 2
double choose_small_jump_radius(const StableModel& model, double tolerance = 1e-3);

// expected radius-(eps, cutoff] jump count over the whole horizon
double expected_jump_count(const StableModel& model, double eps);

class StablePathSampler {
 public:
  // draws the whole horizon's jump list from `rng` (thinning for time-dependent rates)
  StablePathSampler(const StableModel& model, Rng& rng, StableSamplerOptions opts = {});

  double small_jump_radius() const { return eps_; }
  const std::vector<JumpEvent>& jumps() const { return jumps_; }

  // increment over (s, t]; the Gaussian parts are drawn from `rng` per call
  Vec2 increment(double s, double t, Rng& rng) const;

  // positions at nondecreasing times, starting from the origin at time 0
  std::vector<Vec2> positions(const std::vector<double>& times, Rng& rng) const;

 private:
  const StableModel* model_;
  double eps_ = 0.0;
  std::vector<JumpEvent> jumps_;
};

// same law as StablePathSampler::increment over one interval, jumps drawn on the fly;
// the memory-free form used for particle ensembles
Vec2 stable_increment(const StableModel& model, double eps, double s, double t, Rng& rng);

}  // namespace levykit
