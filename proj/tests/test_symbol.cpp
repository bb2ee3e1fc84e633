#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "levykit/model.hpp"
#include "levykit/sphere.hpp"
#include "levykit/symbol.hpp"

using namespace levykit;

namespace {

// closed form for the radial constant, valid away from alpha = 1
double reference_constant(double alpha) { return -std::tgamma(-alpha) * std::cos(M_PI * alpha / 2.0); }

StableModel calibrated_line(double alpha, double wp, double wm,
                            std::optional<double> cutoff = std::nullopt) {
  ModelCoeffs c;
  c.measure = SphereMeasure::line(wp, wm);
  auto model = StableModel::constant(alpha, 1, c, 1.0, cutoff);
  calibrate_constant(model);
  return model;
}

}  // namespace

TEST_CASE("calibrated constant matches the gamma-function closed form") {
  for (double alpha : {0.5, 0.7, 1.3, 1.5, 1.9}) {
    auto model = calibrated_line(alpha, 1.0, 1.0);
    CAPTURE(alpha);
    CHECK(model.calibration() == doctest::Approx(reference_constant(alpha)).epsilon(1e-9));
  }
  // frozen spot values guard the closed form itself
  CHECK(reference_constant(0.7) == doctest::Approx(1.940205571037).epsilon(1e-11));
  CHECK(reference_constant(1.5) == doctest::Approx(1.671085516421).epsilon(1e-11));
}

TEST_CASE("calibrated constant at alpha = 1 is pi/2") {
  auto model = calibrated_line(1.0, 1.0, 1.0, 4.0);
  CHECK(model.calibration() == doctest::Approx(M_PI / 2.0).epsilon(1e-9));
}

TEST_CASE("calibration residual is tiny for every time kind") {
  ModelCoeffs a;
  a.measure = SphereMeasure::line(1.0, 1.0);
  ModelCoeffs b;
  b.measure = SphereMeasure::line(2.0, 0.5);

  auto flat = StableModel::constant(1.5, 1, a, 1.0);
  CHECK(calibrate_constant(flat).max_rel_error < 1e-10);

  auto pieces = StableModel::piecewise(1.5, 1, {0.4}, {a, b}, 1.0);
  CHECK(calibrate_constant(pieces).max_rel_error < 1e-10);

  auto smooth = StableModel::smooth(
      1.5, 1,
      [&](double t) {
        ModelCoeffs c;
        c.measure = SphereMeasure::line(1.0 + t, 1.0);
        return c;
      },
      1.0);
  CHECK(calibrate_constant(smooth).max_rel_error < 1e-8);
}

TEST_CASE("symmetric unit measure gives psi(1) = -2C in one dimension") {
  auto model = calibrated_line(1.5, 1.0, 1.0);
  auto psi = evaluate_symbol(model, 0.3, {1.0, 0.0});
  CHECK(psi.real() == doctest::Approx(-2.0 * reference_constant(1.5)).epsilon(1e-12));
  CHECK(std::abs(psi.imag()) < 1e-12);
}

TEST_CASE("alpha = 2 reduces to the quadratic diffusion form") {
  ModelCoeffs c;
  c.measure = SphereMeasure::zero(2);
  c.diffusion = Mat2{{{1.0, 0.3}, {0.3, 0.8}}};
  auto model = StableModel::constant(2.0, 2, c, 1.0);
  calibrate_constant(model);

  Vec2 xi{1.0, 0.0};
  CHECK(evaluate_symbol(model, 0.5, xi).real() == doctest::Approx(-0.5).epsilon(1e-14));

  Vec2 eta{0.7, -1.2};
  double quad = 0.0;
  double v[2] = {eta[0], eta[1]};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) quad += c.diffusion[i][j] * v[i] * v[j];
  auto psi = evaluate_symbol(model, 0.1, eta);
  CHECK(psi.real() == doctest::Approx(-0.5 * quad).epsilon(1e-14));
  CHECK(psi.imag() == doctest::Approx(0.0));
}

TEST_CASE("symbol is alpha-homogeneous, including the centered alpha = 1 case") {
  for (double alpha : {0.7, 1.0, 1.5}) {
    auto model = calibrated_line(alpha, 1.0, 1.0);
    Vec2 xi{0.83, 0.0};
    auto base = evaluate_symbol(model, 0.2, xi);
    for (double scale : {2.0, 5.0}) {
      Vec2 sxi{scale * xi[0], 0.0};
      auto scaled = evaluate_symbol(model, 0.2, sxi);
      CAPTURE(alpha);
      CHECK(std::abs(scaled - std::pow(scale, alpha) * base) < 1e-12 * std::abs(scaled));
    }
  }
}

TEST_CASE("psi(-xi) is the conjugate of psi(xi)") {
  ModelCoeffs c;
  c.measure = SphereMeasure::circle_atoms({{0.0, 1.0}, {2.0944, 1.0}, {4.18879, 0.7}});
  auto model = StableModel::constant(1.5, 2, c, 1.0);
  calibrate_constant(model);
  for (auto xi : {Vec2{1.3, -0.4}, Vec2{-2.0, 5.5}, Vec2{0.1, 7.0}}) {
    auto plus = evaluate_symbol(model, 0.6, xi);
    auto minus = evaluate_symbol(model, 0.6, {-xi[0], -xi[1]});
    CHECK(std::abs(minus - std::conj(plus)) < 1e-12 * (1.0 + std::abs(plus)));
    CHECK(plus.real() < 0.0);
  }
}

TEST_CASE("closed form and radial quadrature agree across model families") {
  std::vector<StableModel> models;
  models.push_back(calibrated_line(1.5, 2.0, 0.5));
  models.push_back(calibrated_line(0.7, 1.0, 3.0));
  models.push_back(calibrated_line(1.5, 1.0, 1.0, 6.0));
  {
    ModelCoeffs c;
    c.measure = SphereMeasure::circle_constant(0.8);
    auto m = StableModel::constant(1.3, 2, c, 1.0);
    calibrate_constant(m);
    models.push_back(std::move(m));
  }
  {
    // centered three-atom measure exercises the alpha = 1 log bracket
    ModelCoeffs c;
    c.measure = SphereMeasure::circle_atoms(
        {{0.0, 1.0}, {2.0 * M_PI / 3.0, 1.0}, {4.0 * M_PI / 3.0, 1.0}});
    c.drift = {0.4, -0.2};
    auto m = StableModel::constant(1.0, 2, c, 1.0, 5.0);
    calibrate_constant(m);
    models.push_back(std::move(m));
  }

  const Vec2 probes[] = {{0.5, 0.0}, {-1.7, 0.0}, {3.0, 2.0}, {-0.3, 6.1}, {12.0, -5.0}};
  for (const auto& model : models) {
    for (auto xi : probes) {
      Vec2 p = model.dim() == 1 ? Vec2{xi[0], 0.0} : xi;
      for (double t : {0.1, 0.9}) {
        auto closed = evaluate_symbol(model, t, p);
        auto direct = evaluate_symbol_direct(model, t, p);
        CAPTURE(model.alpha());
        CAPTURE(p[0]);
        CAPTURE(p[1]);
        CHECK(std::abs(closed - direct) < 1e-6 * (1.0 + std::abs(direct)));
      }
    }
  }
}

TEST_CASE("assumption report flags degenerate and healthy measures") {
  ModelCoeffs good;
  good.measure = SphereMeasure::circle_constant(1.0);
  auto healthy = StableModel::constant(1.5, 2, good, 1.0);
  calibrate_constant(healthy);
  auto hd = check_assumptions(healthy);
  CHECK(hd.uniformly_elliptic);
  CHECK(hd.coefficients_bounded);
  CHECK(hd.ellipticity > 0.0);

  // all mass on one direction: the orthogonal direction sees no jump activity
  ModelCoeffs bad;
  bad.measure = SphereMeasure::circle_atoms({{0.0, 1.0}});
  auto flat = StableModel::constant(1.5, 2, bad, 1.0);
  calibrate_constant(flat);
  auto fd = check_assumptions(flat);
  CHECK_FALSE(fd.uniformly_elliptic);
}

TEST_CASE("alpha = 1 rejects measures with nonzero mean direction") {
  ModelCoeffs c;
  c.measure = SphereMeasure::line(2.0, 1.0);
  CHECK_THROWS_AS(StableModel::constant(1.0, 1, c, 1.0, 4.0), std::invalid_argument);
}

TEST_CASE("symbol field matches pointwise evaluation on the lattice") {
  ModelCoeffs c;
  c.measure = SphereMeasure::circle_constant(0.5);
  auto model = StableModel::constant(1.5, 2, c, 1.0);
  calibrate_constant(model);
  FrequencyGrid grid(2, 32, 6.0);
  auto field = symbol_field(model, 0.4, grid);
  REQUIRE(field.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); i += 37) {
    auto xi = grid.frequency(i);
    auto ref = evaluate_symbol(model, 0.4, xi);
    CHECK(std::abs(field[i] - ref) < 1e-6 * (1.0 + std::abs(ref)));
  }
}
