#include "levykit/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levykit/fft.hpp"

namespace levykit {

SpectralField::SpectralField(const FrequencyGrid& grid) : grid_(grid) {
  phys_.assign(grid_.size(), 0.0);
  spec_.assign(grid_.size(), {0.0, 0.0});
  has_phys_ = has_spec_ = true;  // the zero field is consistent in both forms
}

SpectralField SpectralField::from_physical(const FrequencyGrid& grid, std::vector<double> values) {
  if (values.size() != grid.size()) throw std::invalid_argument("from_physical: size mismatch");
  SpectralField f(grid);
  f.phys_ = std::move(values);
  f.has_phys_ = true;
  f.has_spec_ = false;
  return f;
}

SpectralField SpectralField::from_point_values(const FrequencyGrid& grid,
                                               const std::function<double(const Vec2&)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return from_physical(grid, std::move(v));
}

SpectralField SpectralField::from_transform(const FrequencyGrid& grid,
                                            const std::function<std::complex<double>(const Vec2&)>& F) {
  SpectralField f(grid);
  const double inv_cell = 1.0 / grid.cell();
  for (std::size_t k = 0; k < f.spec_.size(); ++k)
    f.spec_[k] = grid.parity(k) * inv_cell * F(grid.frequency(k));
  f.has_spec_ = true;
  f.has_phys_ = false;
  return f;
}

SpectralField SpectralField::from_transform_values(const FrequencyGrid& grid,
                                                   const std::vector<std::complex<double>>& F) {
  if (F.size() != grid.size()) throw std::invalid_argument("from_transform_values: size mismatch");
  SpectralField f(grid);
  const double inv_cell = 1.0 / grid.cell();
  for (std::size_t k = 0; k < f.spec_.size(); ++k) f.spec_[k] = grid.parity(k) * inv_cell * F[k];
  f.has_spec_ = true;
  f.has_phys_ = false;
  return f;
}

SpectralField SpectralField::from_spectrum(const FrequencyGrid& grid,
                                           std::vector<std::complex<double>> dft) {
  if (dft.size() != grid.size()) throw std::invalid_argument("from_spectrum: size mismatch");
  SpectralField f(grid);
  f.spec_ = std::move(dft);
  f.has_spec_ = true;
  f.has_phys_ = false;
  return f;
}

const std::vector<double>& SpectralField::physical() {
  sync_physical();
  return phys_;
}

const std::vector<std::complex<double>>& SpectralField::spectrum() {
  sync_spectrum();
  return spec_;
}

std::vector<double>& SpectralField::mutable_physical() {
  sync_physical();
  has_spec_ = false;
  return phys_;
}

std::vector<std::complex<double>>& SpectralField::mutable_spectrum() {
  sync_spectrum();
  has_phys_ = false;
  return spec_;
}

void SpectralField::apply_multiplier(const std::function<std::complex<double>(const Vec2&)>& m) {
  sync_spectrum();
  for (std::size_t k = 0; k < spec_.size(); ++k) spec_[k] *= m(grid_.frequency(k));
  has_phys_ = false;
}

void SpectralField::apply_multiplier(const std::vector<std::complex<double>>& values) {
  if (values.size() != grid_.size()) throw std::invalid_argument("apply_multiplier: size mismatch");
  sync_spectrum();
  for (std::size_t k = 0; k < spec_.size(); ++k) spec_[k] *= values[k];
  has_phys_ = false;
}

std::complex<double> SpectralField::transform_at(std::size_t flat) {
  sync_spectrum();
  return grid_.cell() * grid_.parity(flat) * spec_[flat];
}

double SpectralField::mass() {
  sync_physical();
  double s = 0.0;
  for (double v : phys_) s += v;
  return s * grid_.cell();
}

double SpectralField::l1() {
  sync_physical();
  double s = 0.0;
  for (double v : phys_) s += std::abs(v);
  return s * grid_.cell();
}

double SpectralField::min_value() {
  sync_physical();
  return *std::min_element(phys_.begin(), phys_.end());
}

double SpectralField::max_abs() {
  sync_physical();
  double s = 0.0;
  for (double v : phys_) s = std::max(s, std::abs(v));
  return s;
}

void SpectralField::sync_physical() {
  if (has_phys_) return;
  if (!has_spec_) throw std::logic_error("SpectralField: no data");
  std::vector<std::complex<double>> work = spec_;
  fft_inplace(grid_, work.data(), /*forward=*/false);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  phys_.resize(grid_.size());
  double residue = 0.0;
  for (std::size_t i = 0; i < work.size(); ++i) {
    phys_[i] = work[i].real() * scale;
    residue = std::max(residue, std::abs(work[i].imag()) * scale);
  }
  imag_residue_ = residue;
  has_phys_ = true;
}

void SpectralField::sync_spectrum() {
  if (has_spec_) return;
  if (!has_phys_) throw std::logic_error("SpectralField: no data");
  spec_.resize(grid_.size());
  for (std::size_t i = 0; i < phys_.size(); ++i) spec_[i] = {phys_[i], 0.0};
  fft_inplace(grid_, spec_.data(), /*forward=*/true);
  has_spec_ = true;
}

}  // namespace levykit
