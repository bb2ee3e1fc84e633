#pragma once
// Fourier symbol of the driving generator.
//
// The symbol factors as psi(t, xi) = -|xi|^alpha M(t, xi/|xi|), where M collects the
// direction-dependent pieces: drift (alpha = 1), diffusion (alpha = 2), and the jump
// integral over the sphere with the order-dependent skew bracket
//     alpha != 1 : 1 - i tan(pi alpha / 2) sgn(w, u)
//     alpha == 1 : 1 + i (2/pi) sgn(w, u) ln |(w, u)|
// multiplied by a positive constant C that is never hard-coded: calibrate_constant fits
// it against the direct radial-quadrature evaluation of the jump integral, so the two
// routes stay independent checks of each other.
//
// With the alpha = 1 centering condition (zero mean direction) the normalized-argument
// logarithm equals the unnormalized one after sphere integration, so psi is exactly
// alpha-homogeneous in xi. Models with a jump cutoff R subtract the numerically
// integrated tail of the jump measure beyond R.

#include <complex>
#include <vector>

#include "levykit/grid.hpp"
#include "levykit/model.hpp"

namespace levykit {

// M(t, u) for a unit vector u; requires calibration when alpha < 2
std::complex<double> direction_factor(const StableModel& model, double t, const Vec2& u);

// psi(t, xi), closed form (calibrated); honors the jump cutoff
std::complex<double> evaluate_symbol(const StableModel& model, double t, const Vec2& xi);

// psi(t, xi) by radial quadrature of the jump integral; needs no calibration
std::complex<double> evaluate_symbol_direct(const StableModel& model, double t, const Vec2& xi);

struct CalibrationReport {
  double constant;       // fitted C
  double max_rel_error;  // worst probe disagreement between the two routes after the fit
  int probes;
};

// Fits C by least squares over a deterministic probe set and stores it on the model,
// together with the symbol scale sup Re M used by samplers.
CalibrationReport calibrate_constant(StableModel& model);

struct ModelDiagnostics {
  double ellipticity;        // inf over (t, direction) of Re M
  double directional_mass;   // inf of int |(w,u)|^alpha m dmu (alpha < 2) or (B u, u) (alpha = 2)
  double coefficient_bound;  // sup_t [sphere density and its derivatives + |b| or |B|]
  bool uniformly_elliptic;   // ellipticity clears the direction-sampling floor
  bool coefficients_bounded;
  Vec2 worst_direction{1.0, 0.0};
  double worst_time = 0.0;
};

ModelDiagnostics check_assumptions(const StableModel& model, int directions = 512);

// psi(t, .) on the whole frequency lattice. d=2 goes through a dense angular table of M
// (cubic periodic interpolation); d=1 uses the two directions exactly.
std::vector<std::complex<double>> symbol_field(const StableModel& model, double t,
                                               const FrequencyGrid& grid);

}  // namespace levykit
