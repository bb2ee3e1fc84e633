#pragma once
// A real field on the periodic grid together with its spectrum, kept in sync lazily.
//
// Conventions (see grid.hpp for the lattice):
//   spectrum[k]                 raw unnormalized DFT of the physical samples
//   continuum transform at xi_k = cell * parity(k) * spectrum[k]
// so a field built from analytic transform data F(xi) stores
//   spectrum[k] = parity(k) * F(xi_k) / cell.
// Diagonal frequency operations (symbol multipliers, band projections, derivatives)
// act on spectrum[] directly; the parity and cell factors cancel.

#include <complex>
#include <functional>
#include <vector>

#include "levykit/grid.hpp"

namespace levykit {

class SpectralField {
 public:
  explicit SpectralField(const FrequencyGrid& grid);

  static SpectralField from_physical(const FrequencyGrid& grid, std::vector<double> values);
  static SpectralField from_point_values(const FrequencyGrid& grid,
                                         const std::function<double(const Vec2&)>& f);
  // values of the continuum Fourier transform on the lattice
  static SpectralField from_transform(const FrequencyGrid& grid,
                                      const std::function<std::complex<double>(const Vec2&)>& F);
  static SpectralField from_transform_values(const FrequencyGrid& grid,
                                             const std::vector<std::complex<double>>& F_on_lattice);
  static SpectralField from_spectrum(const FrequencyGrid& grid,
                                     std::vector<std::complex<double>> dft_coefficients);

  const FrequencyGrid& grid() const { return grid_; }

  const std::vector<double>& physical();
  const std::vector<std::complex<double>>& spectrum();
  // mutation entry points invalidate the other representation
  std::vector<double>& mutable_physical();
  std::vector<std::complex<double>>& mutable_spectrum();

  void apply_multiplier(const std::function<std::complex<double>(const Vec2&)>& m);
  void apply_multiplier(const std::vector<std::complex<double>>& values_on_lattice);

  std::complex<double> transform_at(std::size_t flat);  // continuum transform at xi_k

  // imaginary part discarded by the most recent spectrum->physical sync (max abs)
  double imag_residue() const { return imag_residue_; }

  double mass();     // cell * sum physical
  double l1();       // cell * sum |physical|
  double min_value();
  double max_abs();

 private:
  void sync_physical();
  void sync_spectrum();

  FrequencyGrid grid_;
  std::vector<double> phys_;
  std::vector<std::complex<double>> spec_;
  bool has_phys_ = false;
  bool has_spec_ = false;
  double imag_residue_ = 0.0;
};

}  // namespace levykit
