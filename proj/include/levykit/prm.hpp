#pragma once
// Poisson random measures on [0, horizon] x {finite mark set} with compensator dt x Pi,
// compensated integrals against them, and the martingale moment diagnostics used by the
// solver tests.
//
// The compensated integral Q_t = sum_{t_i <= t} g(t_i, v_i) - int_0^t gbar(s) ds, with
// gbar(s) = sum_v Pi_v g(s, v), is piecewise smooth between events, so its running sup is
// evaluated on the union of the event times (both sides of each jump) and a uniform mesh.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "levykit/field.hpp"
#include "levykit/grid.hpp"
#include "levykit/rng.hpp"

namespace levykit {

struct MarkSpace {
  std::vector<double> weights;  // Pi({v}) per mark

  double total() const;
  std::vector<double> cumulative() const;  // for categorical sampling
};

struct PRMEvent {
  double time = 0.0;
  std::size_t mark = 0;
};

// event count Poisson(total * horizon), times iid uniform then sorted, marks categorical
std::vector<PRMEvent> sample_prm(const MarkSpace& marks, double horizon, Rng& rng);

struct CompensatedPath {
  double sup_abs = 0.0;
  double terminal = 0.0;
};

CompensatedPath compensated_integral(const std::vector<PRMEvent>& events, const MarkSpace& marks,
                                     double horizon,
                                     const std::function<double(double, std::size_t)>& g,
                                     int mesh = 512);

// field-valued Q_t at a single time; the compensator integral uses trapezoid quadrature on
// the event-refined uniform mesh (exact jump part, O(mesh^-2) smooth part)
SpectralField compensated_field_integral(const std::vector<PRMEvent>& events,
                                         const MarkSpace& marks, double t,
                                         const FrequencyGrid& grid,
                                         const std::function<SpectralField(double, std::size_t)>& g,
                                         int mesh = 256);

struct MartingaleReport {
  double sup_moment = 0.0;         // (E sup_t |Q_t|^p)^{1/p}
  double sup_moment_stderr = 0.0;  // delta-method stderr of the line above
  double bound_rhs = 0.0;          // sum over l in {2, p} of (int int |g|^l Pi ds)^{1/l}
  double ratio = 0.0;              // sup_moment / bound_rhs
  double terminal_sq_mean = 0.0;   // E Q_T^2
  double terminal_sq_stderr = 0.0;
  double isometry_rhs = 0.0;       // int int g^2 Pi ds
  double doob_ratio = 0.0;         // E sup Q^2 / E Q_T^2, in (1, 4] for martingales
  std::size_t paths = 0;
};

// Monte Carlo check of E sup|Q|^p against the two-term integrand bound, the isometry
// E Q_T^2 = int int g^2 Pi ds, and the Doob ratio. Path m uses path_seed(seed, m).
MartingaleReport martingale_moment_check(const MarkSpace& marks, double horizon,
                                         const std::function<double(double, std::size_t)>& g,
                                         double p, std::size_t paths, std::uint64_t seed);

}  // namespace levykit
