#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "levykit/field.hpp"
#include "levykit/kernel.hpp"
#include "levykit/lp.hpp"
#include "levykit/model.hpp"
#include "levykit/solver.hpp"
#include "levykit/sphere.hpp"
#include "levykit/symbol.hpp"

using namespace levykit;

namespace {

StableModel gaussian_1d(double variance_rate) {
  ModelCoeffs c;
  c.measure = SphereMeasure::zero(1);
  c.diffusion = Mat2{{{variance_rate, 0.0}, {0.0, 0.0}}};
  auto model = StableModel::constant(2.0, 1, c, 1.0);
  calibrate_constant(model);
  return model;
}

StableModel symmetric_stable_1d(double alpha, std::optional<double> cutoff = std::nullopt) {
  ModelCoeffs c;
  c.measure = SphereMeasure::line(1.0, 1.0);
  auto model = StableModel::constant(alpha, 1, c, 1.0, cutoff);
  calibrate_constant(model);
  return model;
}

}  // namespace

TEST_CASE("alpha = 2 density matches the Gaussian closed form") {
  auto model = gaussian_1d(1.3);
  FrequencyGrid grid(1, 1024, 20.0);
  double t = 0.7;
  auto density = heat_density(model, 0.0, t, grid);
  auto values = density.physical();
  double variance = 1.3 * t;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = grid.point(i)[0];
    double exact = std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * M_PI * variance);
    worst = std::max(worst, std::abs(values[i] - exact));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("anisotropic alpha = 2 density matches the bivariate normal") {
  ModelCoeffs c;
  c.measure = SphereMeasure::zero(2);
  c.diffusion = Mat2{{{1.0, 0.3}, {0.3, 0.8}}};
  auto model = StableModel::constant(2.0, 2, c, 1.0);
  calibrate_constant(model);

  FrequencyGrid grid(2, 256, 15.0);
  double t = 1.0;
  auto density = heat_density(model, 0.0, t, grid);
  auto values = density.physical();
  double det = (1.0 * 0.8 - 0.3 * 0.3) * t * t;
  double inv[2][2] = {{0.8 * t / det, -0.3 * t / det}, {-0.3 * t / det, 1.0 * t / det}};
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); i += 7) {
    auto pt = grid.point(i);
    double q = inv[0][0] * pt[0] * pt[0] + 2.0 * inv[0][1] * pt[0] * pt[1] + inv[1][1] * pt[1] * pt[1];
    double exact = std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(det));
    worst = std::max(worst, std::abs(values[i] - exact));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("alpha = 1 with unit symmetric measure is the Cauchy kernel") {
  auto model = symmetric_stable_1d(1.0);
  // slow x^{-2} tails need a wide, fine box before the wrapped images fade
  FrequencyGrid grid(1, 32768, 2048.0);
  double t = 1.0;
  auto density = heat_density(model, 0.0, t, grid);
  auto values = density.physical();
  double scale = M_PI * t;  // psi(xi) = -pi |xi|
  double worst = 0.0;
  double min_value = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double x = grid.point(i)[0];
    double exact = scale / (M_PI * (x * x + scale * scale));
    worst = std::max(worst, std::abs(values[i] - exact));
    min_value = std::min(min_value, values[i]);
  }
  CHECK(worst < 1e-6);
  CHECK(min_value > -1e-9);
}

TEST_CASE("densities keep unit mass and stay essentially nonnegative") {
  FrequencyGrid grid(1, 512, 20.0);
  for (double alpha : {0.7, 1.5}) {
    auto model = symmetric_stable_1d(alpha);
    auto density = heat_density(model, 0.0, 1.0, grid);
    auto diag = density_diagnostics(model, 0.0, 1.0, density);
    CAPTURE(alpha);
    CHECK(diag.mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(diag.min_value > -1e-6);
    CHECK(diag.imag_residue < 1e-12);
  }
}

TEST_CASE("kernel exponent is additive across piecewise coefficient breaks") {
  ModelCoeffs a;
  a.measure = SphereMeasure::line(1.0, 1.0);
  ModelCoeffs b;
  b.measure = SphereMeasure::line(2.0, 0.5);
  auto model = StableModel::piecewise(1.5, 1, {0.4}, {a, b}, 1.0);
  calibrate_constant(model);

  for (double xi : {0.5, 3.0, 11.0}) {
    auto whole = kernel_exponent(model, 0.0, 0.9, {xi, 0.0});
    auto split = kernel_exponent(model, 0.0, 0.4, {xi, 0.0}) +
                 kernel_exponent(model, 0.4, 0.9, {xi, 0.0});
    CHECK(std::abs(whole - split) < 1e-12 * (1.0 + std::abs(whole)));
  }
}

TEST_CASE("multiplier factorizes over adjacent time intervals") {
  auto model = symmetric_stable_1d(1.5);
  FrequencyGrid grid(1, 256, 10.0);
  double lambda = 2.0;
  auto whole = kernel_multiplier(model, 0.0, 0.8, lambda, grid);
  auto left = kernel_multiplier(model, 0.0, 0.3, lambda, grid);
  auto right = kernel_multiplier(model, 0.3, 0.8, lambda, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(whole[i] - left[i] * right[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("localized kernel acts like the full multiplier on its own band") {
  auto model = symmetric_stable_1d(1.5);
  FrequencyGrid grid(1, 512, 20.0);
  LPFamily family(grid);
  auto mult = kernel_multiplier(model, 0.0, 0.5, 1.0, grid);

  for (int j : {0, 2, family.max_level()}) {
    // band-limited input supported where mollifier_j == 1
    std::vector<std::complex<double>> spec(grid.size(), 0.0);
    const auto& blk = family.block_multiplier(j);
    for (std::size_t i = 0; i < grid.size(); ++i) spec[i] = blk[i] * std::exp(std::complex<double>(0.0, 0.13 * static_cast<double>(i % 17)));
    auto u = SpectralField::from_spectrum(grid, spec);

    auto via_full = u;
    via_full.apply_multiplier(mult);

    const auto& moll = family.mollifier(j);
    std::vector<std::complex<double>> localized(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) localized[i] = mult[i] * moll[i];
    auto via_local = u;
    via_local.apply_multiplier(localized);

    auto a = via_full.physical();
    auto b = via_local.physical();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    CAPTURE(j);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("localized kernel matches multiplier times mollifier spectrum") {
  auto model = symmetric_stable_1d(1.5, 8.0);
  FrequencyGrid grid(1, 256, 10.0);
  LPFamily family(grid);
  auto mult = kernel_multiplier(model, 0.0, 0.5, 1.5, grid);
  auto kernel = localized_kernel(model, 0.0, 0.5, 1.5, family, 1);
  auto tv = transform_values(kernel);
  const auto& moll = family.mollifier(1);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(tv[i] - mult[i] * moll[i]));
  CHECK(worst < 1e-12);
  CHECK(kernel.mass() == doctest::Approx((mult[0] * moll[0]).real()).epsilon(1e-10));
}

TEST_CASE("tail estimate shrinks with the box and drives resolution checks") {
  auto model = symmetric_stable_1d(1.5);
  double far = tail_mass_estimate(model, 0.0, 1.0, 40.0);
  double near = tail_mass_estimate(model, 0.0, 1.0, 10.0);
  CHECK(far < near);
  CHECK(far > 0.0);

  double suggested = suggest_half_width(model, 0.0, 1.0, 1e-4);
  CHECK(tail_mass_estimate(model, 0.0, 1.0, suggested) <= 1e-4 * 1.01);

  FrequencyGrid coarse(1, 512, 20.0);
  CHECK_THROWS_AS(require_resolved(model, 0.0, 1.0, coarse, 1e-6), std::domain_error);

  auto truncated = symmetric_stable_1d(1.5, 8.0);
  CHECK_NOTHROW(require_resolved(truncated, 0.0, 1.0, coarse, 1e-6));
}
