#include "levykit/symbol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "levykit/radial.hpp"

namespace levykit {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::complex<double> jump_factor_unit(const ModelCoeffs& c, double alpha, const Vec2& u) {
  // sum_w q_w |(w,u)|^alpha * bracket, i.e. the jump part of M with C = 1
  std::complex<double> s{0.0, 0.0};
  if (alpha == 1.0) {
    for (const auto& n : c.measure.nodes()) {
      const double a = dot(n.w, u);
      if (a == 0.0) continue;
      const double mag = std::abs(a);
      s += n.weight * mag * std::complex<double>{1.0, (2.0 / kPi) * std::copysign(1.0, a) * std::log(mag)};
    }
    return s;
  }
  const double skew = std::tan(0.5 * kPi * alpha);
  for (const auto& n : c.measure.nodes()) {
    const double a = dot(n.w, u);
    if (a == 0.0) continue;
    s += n.weight * std::pow(std::abs(a), alpha) *
         std::complex<double>{1.0, -skew * std::copysign(1.0, a)};
  }
  return s;
}

std::complex<double> drift_diffusion_factor(const ModelCoeffs& c, double alpha, const Vec2& u) {
  std::complex<double> s{0.0, 0.0};
  if (alpha == 1.0) s += std::complex<double>{0.0, -dot(c.drift, u)};
  if (alpha == 2.0) {
    const auto& B = c.diffusion;
    const double quad = B[0][0] * u[0] * u[0] + (B[0][1] + B[1][0]) * u[0] * u[1] + B[1][1] * u[1] * u[1];
    s += 0.5 * quad;
  }
  return s;
}

std::complex<double> cutoff_tail(const ModelCoeffs& c, double alpha, double R, const Vec2& xi) {
  std::complex<double> s{0.0, 0.0};
  for (const auto& n : c.measure.nodes()) s += n.weight * levy_radial_tail(alpha, dot(n.w, xi), R);
  return s;
}

// order-2 derivative bound of the 0-homogeneous extension m(y/|y|), central differences
double density_derivative_bound(const SphereMeasure& m, int orders) {
  if (!m.has_density()) return 0.0;
  const double h = 1e-4;
  auto ext = [&](double x, double y) {
    const double r = std::sqrt(x * x + y * y);
    return m.density_at({x / r, y / r});
  };
  double bound = 0.0;
  const int samples = m.dim() == 1 ? 2 : 256;
  for (int i = 0; i < samples; ++i) {
    double x, y;
    if (m.dim() == 1) {
      x = i == 0 ? 1.0 : -1.0;
      y = 0.0;
    } else {
      const double theta = 2.0 * kPi * i / samples;
      x = std::cos(theta);
      y = std::sin(theta);
    }
    const double f = ext(x, y);
    bound = std::max(bound, std::abs(f));
    if (orders >= 1) {
      const double fx = (ext(x + h, y) - ext(x - h, y)) / (2.0 * h);
      const double fy = m.dim() == 1 ? 0.0 : (ext(x, y + h) - ext(x, y - h)) / (2.0 * h);
      bound = std::max({bound, std::abs(fx), std::abs(fy)});
    }
    if (orders >= 2 && m.dim() == 2) {
      const double fxx = (ext(x + h, y) - 2.0 * f + ext(x - h, y)) / (h * h);
      const double fyy = (ext(x, y + h) - 2.0 * f + ext(x, y - h)) / (h * h);
      const double fxy = (ext(x + h, y + h) - ext(x + h, y - h) - ext(x - h, y + h) + ext(x - h, y - h)) /
                         (4.0 * h * h);
      bound = std::max({bound, std::abs(fxx), std::abs(fyy), std::abs(fxy)});
    }
  }
  return bound;
}

double frobenius(const Mat2& B) {
  return std::sqrt(B[0][0] * B[0][0] + B[0][1] * B[0][1] + B[1][0] * B[1][0] + B[1][1] * B[1][1]);
}

std::vector<Vec2> direction_set(int dim, int count) {
  if (dim == 1) return {{1.0, 0.0}, {-1.0, 0.0}};
  std::vector<Vec2> dirs;
  dirs.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double theta = 2.0 * kPi * i / count;
    dirs.push_back({std::cos(theta), std::sin(theta)});
  }
  return dirs;
}

}  // namespace

std::complex<double> direction_factor(const StableModel& model, double t, const Vec2& u) {
  const ModelCoeffs c = model.coeffs(t);
  std::complex<double> M = drift_diffusion_factor(c, model.alpha(), u);
  if (model.alpha() < 2.0) M += model.calibration() * jump_factor_unit(c, model.alpha(), u);
  return M;
}

std::complex<double> evaluate_symbol(const StableModel& model, double t, const Vec2& xi) {
  const double r = norm(xi);
  if (r == 0.0) return {0.0, 0.0};
  const Vec2 u{xi[0] / r, xi[1] / r};
  std::complex<double> psi = -std::pow(r, model.alpha()) * direction_factor(model, t, u);
  if (model.jump_cutoff())
    psi -= cutoff_tail(model.coeffs(t), model.alpha(), *model.jump_cutoff(), xi);
  return psi;
}

std::complex<double> evaluate_symbol_direct(const StableModel& model, double t, const Vec2& xi) {
  const ModelCoeffs c = model.coeffs(t);
  const double alpha = model.alpha();
  std::complex<double> psi{0.0, 0.0};
  if (alpha == 1.0) psi += std::complex<double>{0.0, dot(c.drift, xi)};
  if (alpha == 2.0) {
    const auto& B = c.diffusion;
    psi -= 0.5 * (B[0][0] * xi[0] * xi[0] + (B[0][1] + B[1][0]) * xi[0] * xi[1] + B[1][1] * xi[1] * xi[1]);
    return psi;
  }
  const double R = model.jump_cutoff() ? *model.jump_cutoff()
                                       : std::numeric_limits<double>::infinity();
  for (const auto& n : c.measure.nodes()) {
    const double a = dot(n.w, xi);
    std::complex<double> radial = levy_radial(alpha, a);
    if (std::isfinite(R)) radial -= levy_radial_tail(alpha, a, R);
    psi += n.weight * radial;
  }
  return psi;
}

CalibrationReport calibrate_constant(StableModel& model) {
  const double alpha = model.alpha();
  const auto times = model.sample_times();
  const auto dirs = direction_set(model.dim(), 16);
  const double radii[] = {0.7, 1.3, 2.9};

  double constant = 0.0;
  int probes = 0;

  if (alpha < 2.0) {
    // direct jump integral should be exactly C x (closed jump factor with C = 1)
    double num = 0.0, den = 0.0;
    for (double t : times) {
      const ModelCoeffs c = model.coeffs(t);
      for (const auto& u : dirs) {
        for (double r : radii) {
          const Vec2 xi{r * u[0], r * u[1]};
          std::complex<double> direct{0.0, 0.0};
          for (const auto& n : c.measure.nodes()) direct += n.weight * levy_radial(alpha, dot(n.w, xi));
          const std::complex<double> closed_unit =
              -std::pow(r, alpha) * jump_factor_unit(c, alpha, u);
          num += (direct * std::conj(closed_unit)).real();
          den += std::norm(closed_unit);
          ++probes;
        }
      }
    }
    if (den == 0.0) throw std::invalid_argument("calibrate_constant: jump measure is zero");
    constant = num / den;
  }

  // symbol scale: sup Re M over a denser scan, used as the increment-scale estimate
  double scale = 0.0;
  model.set_calibration(constant, 1.0);  // provisional so direction_factor works
  for (double t : times)
    for (const auto& u : direction_set(model.dim(), 64))
      scale = std::max(scale, direction_factor(model, t, u).real());
  model.set_calibration(constant, scale);

  double worst = 0.0;
  for (double t : times) {
    for (const auto& u : dirs) {
      for (double r : radii) {
        const Vec2 xi{r * u[0], r * u[1]};
        const std::complex<double> a = evaluate_symbol(model, t, xi);
        const std::complex<double> b = evaluate_symbol_direct(model, t, xi);
        worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(b)));
      }
    }
  }
  return {constant, worst, probes};
}

ModelDiagnostics check_assumptions(const StableModel& model, int directions) {
  const double alpha = model.alpha();
  if (alpha < 2.0 && !model.calibrated())
    throw std::logic_error("check_assumptions: calibrate the model first");

  ModelDiagnostics d;
  d.ellipticity = std::numeric_limits<double>::infinity();
  d.directional_mass = std::numeric_limits<double>::infinity();
  d.coefficient_bound = 0.0;
  double re_peak = 0.0;

  for (double t : model.sample_times()) {
    const ModelCoeffs c = model.coeffs(t);
    for (const auto& u : direction_set(model.dim(), directions)) {
      const double re = direction_factor(model, t, u).real();
      re_peak = std::max(re_peak, re);
      if (re < d.ellipticity) {
        d.ellipticity = re;
        d.worst_direction = u;
        d.worst_time = t;
      }
      double mass;
      if (alpha == 2.0) {
        const auto& B = c.diffusion;
        mass = B[0][0] * u[0] * u[0] + (B[0][1] + B[1][0]) * u[0] * u[1] + B[1][1] * u[1] * u[1];
      } else {
        mass = 0.0;
        for (const auto& n : c.measure.nodes()) mass += n.weight * std::pow(std::abs(dot(n.w, u)), alpha);
      }
      d.directional_mass = std::min(d.directional_mass, mass);
    }

    const int orders = model.dim() == 1 ? 1 : 2;
    double bound = 0.0;
    if (alpha < 2.0) {
      if (c.measure.has_density()) {
        bound += density_derivative_bound(c.measure, orders);
      } else {
        for (const auto& n : c.measure.nodes()) bound = std::max(bound, n.weight);
      }
    }
    if (alpha == 1.0) bound += norm(c.drift);
    if (alpha == 2.0) bound += frobenius(c.diffusion);
    d.coefficient_bound = std::max(d.coefficient_bound, bound);
  }

  // a direction killed by the measure still shows ~ gap^alpha at the nearest sample,
  // so anything below that floor is indistinguishable from degenerate
  const double gap = model.dim() == 2 ? M_PI / directions : 0.0;
  d.uniformly_elliptic = d.ellipticity > re_peak * std::pow(gap, std::min(alpha, 2.0));
  d.coefficients_bounded = std::isfinite(d.coefficient_bound);
  return d;
}

std::vector<std::complex<double>> symbol_field(const StableModel& model, double t,
                                               const FrequencyGrid& grid) {
  const double alpha = model.alpha();
  std::vector<std::complex<double>> out(grid.size());

  if (grid.dim == 1) {
    const std::complex<double> m_plus = direction_factor(model, t, {1.0, 0.0});
    const std::complex<double> m_minus = direction_factor(model, t, {-1.0, 0.0});
    const bool cut = model.jump_cutoff().has_value();
    const ModelCoeffs c = cut ? model.coeffs(t) : ModelCoeffs{};
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double xi = grid.frequency(k)[0];
      if (xi == 0.0) {
        out[k] = {0.0, 0.0};
        continue;
      }
      out[k] = -std::pow(std::abs(xi), alpha) * (xi > 0.0 ? m_plus : m_minus);
      if (cut) out[k] -= cutoff_tail(c, alpha, *model.jump_cutoff(), {xi, 0.0});
    }
    return out;
  }

  if (model.jump_cutoff())
    throw std::invalid_argument("symbol_field: jump cutoff not supported on d=2 grids");

  // dense angular table of M + periodic cubic interpolation
  const int table_n = 8192;
  std::vector<std::complex<double>> table(table_n);
  for (int i = 0; i < table_n; ++i) {
    const double theta = 2.0 * kPi * i / table_n;
    table[i] = direction_factor(model, t, {std::cos(theta), std::sin(theta)});
  }
  auto interp = [&](double theta) {
    double pos = theta / (2.0 * kPi) * table_n;
    pos -= std::floor(pos / table_n) * table_n;
    const int i1 = static_cast<int>(std::floor(pos)) % table_n;
    const double s = pos - std::floor(pos);
    const int i0 = (i1 + table_n - 1) % table_n;
    const int i2 = (i1 + 1) % table_n;
    const int i3 = (i1 + 2) % table_n;
    const auto &p0 = table[i0], &p1 = table[i1], &p2 = table[i2], &p3 = table[i3];
    // Catmull-Rom
    return p1 + 0.5 * s * (p2 - p0 + s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + s * (3.0 * (p1 - p2) + p3 - p0)));
  };
  for (std::size_t k = 0; k < out.size(); ++k) {
    const Vec2 xi = grid.frequency(k);
    const double r = norm(xi);
    if (r == 0.0) {
      out[k] = {0.0, 0.0};
      continue;
    }
    out[k] = -std::pow(r, alpha) * interp(std::atan2(xi[1], xi[0]));
  }
  return out;
}

}  // namespace levykit
