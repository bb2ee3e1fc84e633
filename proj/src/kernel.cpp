#include "levykit/kernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "levykit/symbol.hpp"

namespace levykit {

namespace {

void check_interval(const StableModel& model, double s, double t) {
  if (!(s <= t)) throw std::invalid_argument("kernel: need s <= t");
  if (s < 0.0 || t > model.horizon() + 1e-12)
    throw std::invalid_argument("kernel: [s,t] must lie inside the model horizon");
}

// largest eigenvalue of a symmetric 2x2 accumulated diffusion matrix
double top_eigenvalue(const Mat2& m, int dim) {
  if (dim == 1) return m[0][0];
  const double half_tr = 0.5 * (m[0][0] + m[1][1]);
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = std::max(0.0, half_tr * half_tr - det);
  return half_tr + std::sqrt(disc);
}

}  // namespace

std::complex<double> kernel_exponent(const StableModel& model, double s, double t, const Vec2& xi) {
  check_interval(model, s, t);
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [sample, weight] : model.quadrature_nodes(s, t))
    acc += weight * evaluate_symbol(model, sample, xi);
  return acc;
}

std::vector<std::complex<double>> kernel_multiplier(const StableModel& model, double s, double t,
                                                    double lambda, const FrequencyGrid& grid) {
  check_interval(model, s, t);
  const std::size_t count = grid.size();
  std::vector<std::complex<double>> expo(count, std::complex<double>{0.0, 0.0});
  for (const auto& [sample, weight] : model.quadrature_nodes(s, t)) {
    const auto psi = symbol_field(model, sample, grid);
    for (std::size_t k = 0; k < count; ++k) expo[k] += weight * psi[k];
  }
  const double damp = lambda * (t - s);
  std::vector<std::complex<double>> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = std::exp(expo[k] - damp);
  return out;
}

SpectralField heat_density(const StableModel& model, double s, double t, const FrequencyGrid& grid) {
  // the density's transform is E e^{-i xi Z}: the semigroup multiplier conjugated
  auto mult = kernel_multiplier(model, s, t, 0.0, grid);
  for (auto& m : mult) m = std::conj(m);
  return SpectralField::from_transform_values(grid, mult);
}

SpectralField localized_kernel(const StableModel& model, double s, double t, double lambda,
                               const LPFamily& family, int j) {
  auto mult = kernel_multiplier(model, s, t, lambda, family.grid());
  const auto& moll = family.mollifier(j);
  for (std::size_t k = 0; k < mult.size(); ++k) mult[k] *= moll[k];
  return SpectralField::from_transform_values(family.grid(), mult);
}

KernelDiagnostics density_diagnostics(const StableModel& model, double s, double t,
                                      SpectralField& density) {
  KernelDiagnostics d;
  d.mass = density.mass();
  d.min_value = density.min_value();
  d.imag_residue = density.imag_residue();
  const FrequencyGrid grid = density.grid();
  d.tail_mass_estimate = tail_mass_estimate(model, s, t, grid.box);

  const auto& phys = density.physical();
  double edge = 0.0;
  if (grid.dim == 1) {
    edge = std::abs(phys[0]);  // sample at x = -L, the farthest point from the origin
  } else {
    for (int i = 0; i < grid.n; ++i) {
      edge = std::max(edge, std::abs(phys[grid.flat(0, i)]));
      edge = std::max(edge, std::abs(phys[grid.flat(i, 0)]));
    }
  }
  d.edge_density = edge;
  return d;
}

double tail_mass_estimate(const StableModel& model, double s, double t, double half_width) {
  check_interval(model, s, t);
  if (s == t) return 0.0;
  const double alpha = model.alpha();
  const double L = half_width;

  if (alpha == 2.0) {
    Mat2 acc{{{0.0, 0.0}, {0.0, 0.0}}};
    for (const auto& [sample, weight] : model.quadrature_nodes(s, t)) {
      const Mat2 b = model.coeffs(sample).diffusion;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) acc[i][j] += weight * b[i][j];
    }
    const double var = top_eigenvalue(acc, model.dim());
    if (var <= 0.0) return 0.0;
    if (model.dim() == 1) return std::erfc(L / std::sqrt(2.0 * var));
    // coordinate union bound, each coordinate variance bounded by the top eigenvalue
    return 2.0 * std::erfc(L / (2.0 * std::sqrt(var)));
  }

  // leading single-jump term (t - s) nu(|y| > L)
  double worst_rate = 0.0;
  for (double sample : model.sample_times()) {
    if (sample < s || sample > t) continue;
    worst_rate = std::max(worst_rate, model.coeffs(sample).measure.total());
  }
  if (worst_rate == 0.0)  // interval shorter than the sampling stencil
    worst_rate = model.coeffs(0.5 * (s + t)).measure.total();
  double radial = std::pow(L, -alpha) / alpha;
  if (model.jump_cutoff()) {
    const double r = *model.jump_cutoff();
    radial = L >= r ? 0.0 : (std::pow(L, -alpha) - std::pow(r, -alpha)) / alpha;
  }
  return (t - s) * worst_rate * radial;
}

double suggest_half_width(const StableModel& model, double s, double t, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("suggest_half_width: eps must be positive");
  check_interval(model, s, t);
  if (s == t) return 1.0;
  const double alpha = model.alpha();
  if (alpha < 2.0) {
    const double rate = model.coeffs(0.5 * (s + t)).measure.total();
    double L = std::pow((t - s) * rate / (alpha * eps), 1.0 / alpha);
    if (model.jump_cutoff()) L = std::min(L, *model.jump_cutoff());
    return std::max(L, 1.0);
  }
  double L = 1.0;
  while (tail_mass_estimate(model, s, t, L) > eps && L < 1e9) L *= 1.25;
  return L;
}

void require_resolved(const StableModel& model, double s, double t, const FrequencyGrid& grid,
                      double tolerance) {
  const double tail = tail_mass_estimate(model, s, t, grid.box);
  if (tail <= tolerance) return;
  std::ostringstream msg;
  msg << "grid box half-width " << grid.box << " leaves estimated mass " << tail
      << " outside the box (tolerance " << tolerance << "); half-width at least "
      << suggest_half_width(model, s, t, tolerance) << " would do";
  throw std::domain_error(msg.str());
}

}  // namespace levykit
