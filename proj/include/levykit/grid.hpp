#pragma once
// Uniform periodic grid on [-L, L)^d and its Fourier lattice.
//
// Physical nodes:   x_i = -L + i h,  h = 2L/n  (row-major in d=2, first index slowest)
// Frequency nodes:  xi_k = (pi/L) k~, k~ = k for k < n/2, k - n otherwise.
// The box offset -L shows up as a parity factor (-1)^{sum k} when converting between
// raw DFT coefficients and continuum-transform samples; see field.hpp.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace levykit {

using Vec2 = std::array<double, 2>;

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

struct FrequencyGrid {
  int dim = 1;      // 1 or 2
  int n = 0;        // points per axis, power of two
  double box = 0.0; // half-width L

  FrequencyGrid(int d, int points, double half_width) : dim(d), n(points), box(half_width) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("FrequencyGrid: dim must be 1 or 2");
    if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("FrequencyGrid: n must be a power of two >= 2");
    if (!(box > 0.0)) throw std::invalid_argument("FrequencyGrid: box half-width must be positive");
  }

  std::size_t size() const {
    return dim == 1 ? static_cast<std::size_t>(n)
                    : static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }
  double spacing() const { return 2.0 * box / n; }
  double cell() const { return dim == 1 ? spacing() : spacing() * spacing(); }
  double freq_step() const { return 3.14159265358979323846 / box; }
  double nyquist() const { return freq_step() * (n / 2); }

  int signed_index(int k) const { return k < n / 2 ? k : k - n; }

  // raw per-axis indices of a flat offset
  std::array<int, 2> indices(std::size_t flat) const {
    if (dim == 1) return {static_cast<int>(flat), 0};
    return {static_cast<int>(flat / static_cast<std::size_t>(n)),
            static_cast<int>(flat % static_cast<std::size_t>(n))};
  }
  std::size_t flat(int i0, int i1 = 0) const {
    return dim == 1 ? static_cast<std::size_t>(i0)
                    : static_cast<std::size_t>(i0) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i1);
  }

  Vec2 point(std::size_t flat_index) const {
    const auto ij = indices(flat_index);
    const double h = spacing();
    if (dim == 1) return {-box + ij[0] * h, 0.0};
    return {-box + ij[0] * h, -box + ij[1] * h};
  }

  Vec2 frequency(std::size_t flat_index) const {
    const auto ij = indices(flat_index);
    const double step = freq_step();
    if (dim == 1) return {step * signed_index(ij[0]), 0.0};
    return {step * signed_index(ij[0]), step * signed_index(ij[1])};
  }

  double parity(std::size_t flat_index) const {  // (-1)^{sum of raw indices}
    const auto ij = indices(flat_index);
    return ((ij[0] + ij[1]) & 1) ? -1.0 : 1.0;
  }

  bool operator==(const FrequencyGrid&) const = default;
};

}  // namespace levykit
