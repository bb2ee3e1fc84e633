#pragma once
// Radial integrals of the jump measure, resolved numerically.
//
// These are the slow-but-direct route used to pin the calibration constant and to
// truncate jump tails; no closed-form stable-law constants appear here, so results can
// be checked against the closed-form evaluation independently.

#include <complex>

namespace levykit {

// int_R^inf e^{iar} r^{-1-alpha} dr  (a real; oscillatory tail by contour rotation)
std::complex<double> osc_power_tail(double alpha, double a, double R);

// int_0^inf [e^{iar} - 1 - iar chi(r)] r^{-1-alpha} dr with the standard centering:
// chi = 1 for alpha in (1,2], chi = 1_{r<=1} for alpha = 1, chi = 0 for alpha < 1.
std::complex<double> levy_radial(double alpha, double a);

// int_R^inf [e^{iar} - 1 - iar 1_{alpha>1}] r^{-1-alpha} dr, R >= 1 when alpha == 1.
std::complex<double> levy_radial_tail(double alpha, double a, double R);

// Gauss-Legendre rule shared by the integrals above (20 points, generated once).
const double* gl20_nodes();
const double* gl20_weights();

}  // namespace levykit
