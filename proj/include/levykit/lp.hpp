#pragma once
// Dyadic frequency decomposition and the stochastic Holder-norm estimators built on it.
//
// The base band profile is phi_hat(xi) = B(log2|xi|) / D(log2|xi|) with B the standard
// C^inf bump on (-1,1) and D(u) = sum_m B(u - m). D is 1-periodic and positive, so
// sum_j phi_hat(2^{-j} xi) = 1 exactly for xi != 0 and supp phi_hat stays inside the
// annulus 1/2 < |xi| < 2. The low-pass completion is psi_hat = 1 - sum_{k>=1}
// phi_hat(2^{-k} xi); blocks are j = 0 -> psi_hat, j >= 1 -> phi_hat(2^{-j} xi).
//
// Mollifier multipliers (used by the localized kernels) must equal 1 on the support of
// their block. For j >= 1 the three-neighbor sum phi_{j-1} + phi_j + phi_{j+1} does it
// (phi_0 meaning the k = 0 dilate, not the low-pass); for j = 0 the completion that is
// identically 1 on |xi| < 2 is psi_hat + phi_hat_1. psi_hat + phi_hat_0 is not: on the
// shell 1/2 < |xi| < 1 it exceeds 1.
//
// Norms estimated over a path ensemble, p-th moments across paths:
//   classic  ||u||_p + ||d^a u||_p + [d^a u]_{b;p}
//   lp_equiv ||low-pass u||_p + sup_{j>=1} 2^{(a+b)j} ||block_j u||_p
// with ||v||_p = sup over (t, x) of (E|v(t,x)|^p)^{1/p}. The Holder seminorm takes the
// sup over dyadic lattice displacements h, 2h, 4h, ... up to half the box per axis
// (periodic shifts) of ||v(.+h) - v||_p / |h|^b. Reductions follow path index order in
// fixed chunks so results do not depend on scheduling.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "levykit/field.hpp"
#include "levykit/grid.hpp"

namespace levykit {

class LPFamily {
 public:
  // requires 2^{j_max} <= nyquist/2 so the top block is fully resolved;
  // j_max < 0 selects the largest admissible level
  explicit LPFamily(const FrequencyGrid& grid, int j_max = -1);

  const FrequencyGrid& grid() const { return grid_; }
  int max_level() const { return j_max_; }

  // pointwise profiles
  static double bump(double u);                    // B(u)
  static double annulus_profile(double log2_r);    // B(u)/D(u)
  double band_value(const Vec2& xi, int j) const;  // phi_hat(2^{-j} xi)
  double low_pass_value(const Vec2& xi) const;     // psi_hat(xi)

  // lattice tables, indexed by flat lattice index
  const std::vector<double>& block_multiplier(int j) const;  // j=0: psi_hat, j>=1: phi_hat_j
  const std::vector<double>& mollifier(int j) const;         // == 1 on block j's support

 private:
  FrequencyGrid grid_;
  int j_max_;
  std::vector<std::vector<double>> bands_;  // phi_hat_j, j = 0 .. j_max+1
  std::vector<double> low_;                 // psi_hat
  std::vector<std::vector<double>> mollifiers_;
};

void apply_real_multiplier(SpectralField& u, const std::vector<double>& values_on_lattice);

// frequency projection onto block j (j = 0 is the low-pass block)
SpectralField block(SpectralField& u, const LPFamily& family, int j);

// |xi|^order multiplier; order = 2 is the (positive) Laplacian symbol, order = 0 identity
void fractional_derivative_inplace(SpectralField& u, double order);
SpectralField fractional_derivative(SpectralField& u, double order);

// partial sum: low-pass + bands 1..n (the mollification sequence u_n)
SpectralField mollify_sequence(SpectralField& u, const LPFamily& family, int n);

struct NormReport {
  double classic = 0.0;
  double sup_part = 0.0;     // ||u||_p
  double deriv_part = 0.0;   // ||d^a u||_p
  double holder_part = 0.0;  // [d^a u]_{b;p}
  double lp_equiv = 0.0;
  double mc_stderr = 0.0;    // delta-method stderr of classic at the achieving points
  double alpha = 0.0, beta = 0.0, p = 2.0;
  double r = 0.0;            // set by the (r,p) variant, 0 otherwise
  std::size_t paths = 0;
};

// Pointwise magnitudes of every linear functional the norm needs, for one snapshot.
// The (r,p) estimator combines these across marks before accumulation.
struct ComponentSet {
  std::vector<double> plain;               // |u|
  std::vector<double> deriv;               // |d^a u|
  std::vector<std::vector<double>> diffs;  // |delta_h d^a u| per (axis, shift)
  std::vector<std::vector<double>> bands;  // |block_j u| per level 0..j_max
};

// Accumulates ensemble moment statistics. add_path per path; merge in chunk order.
// The LPFamily must outlive the estimator.
class HolderNormEstimator {
 public:
  HolderNormEstimator(const LPFamily& family, double alpha, double beta, double p,
                      std::size_t snapshots);

  ComponentSet components(SpectralField& snapshot) const;

  void add_path(std::span<SpectralField> snapshots);
  // precombined variant: one ComponentSet per snapshot
  void add_component_path(std::span<const ComponentSet> components_per_snapshot);
  void merge(const HolderNormEstimator& other);
  NormReport finalize() const;

  const std::vector<std::size_t>& shift_steps() const { return shifts_; }

 private:
  struct Stat {  // per (t, x) moment sums over paths
    std::vector<double> sum_p, sum_2p;
  };
  struct Peak {  // sup of m_p^{1/p} over (t, x) and its stderr there
    double value = 0.0;
    double stderr_at_peak = 0.0;
  };
  void accumulate(Stat& s, std::size_t idx, double value);
  Peak peak(const Stat& s) const;

  const LPFamily* family_;
  FrequencyGrid grid_;
  double alpha_, beta_, p_;
  std::size_t snapshots_;
  std::size_t paths_ = 0;
  std::vector<std::size_t> shifts_;  // lattice step counts 1, 2, 4, ... n/4
  Stat plain_, deriv_;
  std::vector<Stat> shifted_;  // (axis, shift) pairs, axis-major
  std::vector<Stat> bands_;    // blocks 0..j_max
};

// deterministic single series (ensemble of one; mc_stderr is 0)
NormReport holder_norm(std::span<SpectralField> snapshots, const LPFamily& family,
                       double alpha, double beta, double p);

// (r,p) norm of mark-indexed fields g(t, x, v): every linear functional (derivative,
// shift difference, block) acts per mark, the weighted r-norm over marks is taken
// pointwise, and only then the p-th moment across paths.
class MarkNormEstimator {
 public:
  MarkNormEstimator(const LPFamily& family, double alpha, double beta, double r, double p,
                    std::size_t snapshots, std::vector<double> mark_weights);
  // series_per_mark[v] is the snapshot sequence of the v-th mark component
  void add_path(std::span<std::vector<SpectralField>> series_per_mark);
  void merge(const MarkNormEstimator& other);
  NormReport finalize() const;

 private:
  HolderNormEstimator inner_;
  double r_;
  std::vector<double> weights_;
};

NormReport holder_norm_rp(std::span<std::vector<SpectralField>> series_per_mark,
                          const LPFamily& family, double alpha, double beta, double r,
                          double p, const std::vector<double>& mark_weights);

}  // namespace levykit
