#pragma once
// Fourier-side propagator exp{int_s^t psi(r, .) dr - lambda (t-s)} and its physical-side
// transition density on the periodic grid.
//
// The grid density is the periodization of the continuum one, so its lattice mass equals
// the multiplier at frequency zero (= 1 for lambda = 0) up to roundoff. Mass is therefore
// not the interesting diagnostic; negativity from spectral ringing, the imaginary residue
// of the inverse transform, and the a priori mass beyond the box are. The tail estimate is
// the leading single-jump term (t-s) nu(|y| > L) for alpha < 2 and the exact Gaussian tail
// for alpha = 2; it is a monitor, never silently assumed small.

#include <complex>
#include <vector>

#include "levykit/field.hpp"
#include "levykit/grid.hpp"
#include "levykit/lp.hpp"
#include "levykit/model.hpp"

namespace levykit {

// int_s^t psi(r, xi) dr; exact in time for constant and piecewise coefficient paths
std::complex<double> kernel_exponent(const StableModel& model, double s, double t, const Vec2& xi);

// exp(int_s^t psi - lambda (t-s)) per flat lattice index
std::vector<std::complex<double>> kernel_multiplier(const StableModel& model, double s, double t,
                                                    double lambda, const FrequencyGrid& grid);

// transition density: inverse transform of the lambda = 0 multiplier
SpectralField heat_density(const StableModel& model, double s, double t, const FrequencyGrid& grid);

// inverse transform of multiplier * mollifier_j (the level-j localized kernel)
SpectralField localized_kernel(const StableModel& model, double s, double t, double lambda,
                               const LPFamily& family, int j);

struct KernelDiagnostics {
  double mass = 0.0;                // cell * sum of samples
  double min_value = 0.0;           // most negative sample
  double imag_residue = 0.0;        // largest imaginary part discarded by the transform
  double tail_mass_estimate = 0.0;  // continuum mass beyond the box
  double edge_density = 0.0;        // largest |sample| on the box boundary
};

KernelDiagnostics density_diagnostics(const StableModel& model, double s, double t,
                                      SpectralField& density);

// continuum mass beyond radius `half_width` (see header comment)
double tail_mass_estimate(const StableModel& model, double s, double t, double half_width);

// smallest box half-width whose tail estimate falls below eps
double suggest_half_width(const StableModel& model, double s, double t, double eps);

// throws std::domain_error naming a sufficient half-width when the tail estimate for
// this grid exceeds `tolerance`
void require_resolved(const StableModel& model, double s, double t, const FrequencyGrid& grid,
                      double tolerance);

}  // namespace levykit
