#pragma once
// Solution operators for  du = [(A - lambda) u + f] dt + int g dq,  u(0) = 0  on the
// periodic grid, in two deliberately independent routes:
//   - direct quadrature of the variation-of-constants formula at one output time;
//   - exponential stepping over the union of a uniform grid and the event times, with
//     forcing frozen at step midpoints. Exact in time when the symbol is constant per
//     step and the forcing is too; events are applied after the flow reaches their time.
// The residual check verifies the integral identity
//   u(t) = int_0^t [(A - lambda) u + f - gbar] ds + sum_{t_i <= t} g(t_i, v_i)
// from recorded states: trapezoid mode discretizes the time integral independently of
// the stepping (order 2 in dt), exact mode uses the closed-form step integrals and must
// telescope to roundoff for time-homogeneous data.

#include <complex>
#include <functional>
#include <vector>

#include "levykit/field.hpp"
#include "levykit/grid.hpp"
#include "levykit/model.hpp"
#include "levykit/prm.hpp"

namespace levykit {

using ForcingTerm = std::function<SpectralField(double)>;               // f(s)
using MarkForcing = std::function<SpectralField(double, std::size_t)>;  // g(s, v)

// continuum transform values per lattice index (the solver's state convention)
std::vector<std::complex<double>> transform_values(SpectralField& f);

// direct route, deterministic part: composite midpoint in s over [0, t]
SpectralField apply_R_lambda(const StableModel& model, double lambda, const ForcingTerm& f,
                             double t, const FrequencyGrid& grid, int quadrature_points = 256);

// direct route, stochastic part: exact jump sum, midpoint quadrature for the compensator
SpectralField apply_Rtilde_lambda(const StableModel& model, double lambda, const MarkForcing& g,
                                  const MarkSpace& marks, const std::vector<PRMEvent>& events,
                                  double t, const FrequencyGrid& grid,
                                  int quadrature_points = 256);

struct SolveOptions {
  double t_end = 0.0;  // <= model horizon; 0 means the horizon itself
  double dt = 1e-2;
  std::vector<double> snapshot_times;      // sorted, within [0, t_end]; empty -> {t_end}
  bool forcing_time_homogeneous = false;   // evaluate f and g once, reuse the transforms
};

struct SolvePath {
  std::vector<double> times;
  std::vector<SpectralField> states;
};

SolvePath solve_cauchy(const StableModel& model, double lambda, const ForcingTerm* f,
                       const MarkForcing* g, const MarkSpace* marks,
                       const std::vector<PRMEvent>* events, const FrequencyGrid& grid,
                       const SolveOptions& opts);

enum class ResidualMode { exact_exponential, trapezoid };

struct ResidualReport {
  double max_residual = 0.0;  // max over the lattice of |state - accumulated identity|
  double state_scale = 0.0;   // max over the lattice of |state| at t_end
};

ResidualReport residual_check(const StableModel& model, double lambda, const ForcingTerm* f,
                              const MarkForcing* g, const MarkSpace* marks,
                              const std::vector<PRMEvent>* events, const FrequencyGrid& grid,
                              const SolveOptions& opts, ResidualMode mode);

}  // namespace levykit
