// Acceptance suite: one line per criterion, hard tolerances, wall-clock caps.
// Exit code 0 only if every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "levykit/experiments.hpp"
#include "levykit/field.hpp"
#include "levykit/filtering.hpp"
#include "levykit/kernel.hpp"
#include "levykit/lp.hpp"
#include "levykit/model.hpp"
#include "levykit/prm.hpp"
#include "levykit/rng.hpp"
#include "levykit/solver.hpp"
#include "levykit/sphere.hpp"
#include "levykit/stable.hpp"
#include "levykit/symbol.hpp"

using namespace levykit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

StableModel line_model(double alpha, double wp, double wm,
                       std::optional<double> cutoff = std::nullopt) {
  ModelCoeffs c;
  c.measure = SphereMeasure::line(wp, wm);
  auto model = StableModel::constant(alpha, 1, c, 1.0, cutoff);
  calibrate_constant(model);
  return model;
}

StableModel diffusion_model_1d(double rate) {
  ModelCoeffs c;
  c.measure = SphereMeasure::zero(1);
  c.diffusion = Mat2{{{rate, 0.0}, {0.0, 0.0}}};
  auto model = StableModel::constant(2.0, 1, c, 1.0);
  calibrate_constant(model);
  return model;
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. heat kernels: unit mass, nonnegativity, Gaussian and Cauchy closed forms
// ---------------------------------------------------------------------------
Outcome criterion_kernels() {
  Outcome out;
  double worst_mass = 0.0, worst_min = 0.0;

  struct Row {
    StableModel model;
    FrequencyGrid grid;
  };
  std::vector<Row> rows;
  rows.push_back({line_model(0.7, 1.0, 1.0), FrequencyGrid(1, 512, 20.0)});
  rows.push_back({line_model(1.0, 1.0, 1.0), FrequencyGrid(1, 32768, 2048.0)});
  rows.push_back({line_model(1.5, 1.0, 1.0), FrequencyGrid(1, 1024, 20.0)});
  rows.push_back({diffusion_model_1d(1.0), FrequencyGrid(1, 1024, 20.0)});
  {
    ModelCoeffs c;
    c.measure = SphereMeasure::circle_constant(0.25);
    auto m = StableModel::constant(1.5, 2, c, 1.0);
    calibrate_constant(m);
    rows.push_back({std::move(m), FrequencyGrid(2, 256, 15.0)});
  }
  {
    ModelCoeffs c;
    c.measure = SphereMeasure::zero(2);
    c.diffusion = Mat2{{{1.0, 0.3}, {0.3, 0.8}}};
    auto m = StableModel::constant(2.0, 2, c, 1.0);
    calibrate_constant(m);
    rows.push_back({std::move(m), FrequencyGrid(2, 256, 15.0)});
  }

  for (auto& row : rows) {
    auto density = heat_density(row.model, 0.0, 1.0, row.grid);
    auto diag = density_diagnostics(row.model, 0.0, 1.0, density);
    worst_mass = std::max(worst_mass, std::abs(diag.mass - 1.0));
    worst_min = std::min(worst_min, diag.min_value);
  }

  // Gaussian closed form, d = 1
  double gauss_sup = 0.0;
  {
    auto& grid = rows[3].grid;
    auto density = heat_density(rows[3].model, 0.0, 1.0, grid);
    auto values = density.physical();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double x = grid.point(i)[0];
      double exact = std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
      gauss_sup = std::max(gauss_sup, std::abs(values[i] - exact));
    }
  }
  // Cauchy closed form, d = 1 (psi = -pi |xi| for the unit symmetric measure)
  double cauchy_sup = 0.0;
  {
    auto& grid = rows[1].grid;
    auto density = heat_density(rows[1].model, 0.0, 1.0, grid);
    auto values = density.physical();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double x = grid.point(i)[0];
      double exact = M_PI / (M_PI * (x * x + M_PI * M_PI));
      cauchy_sup = std::max(cauchy_sup, std::abs(values[i] - exact));
    }
  }
  // bivariate normal closed form, d = 2
  double gauss2_sup = 0.0;
  {
    auto& grid = rows[5].grid;
    auto density = heat_density(rows[5].model, 0.0, 1.0, grid);
    auto values = density.physical();
    double det = 1.0 * 0.8 - 0.3 * 0.3;
    double inv[2][2] = {{0.8 / det, -0.3 / det}, {-0.3 / det, 1.0 / det}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto pt = grid.point(i);
      double q = inv[0][0] * pt[0] * pt[0] + 2.0 * inv[0][1] * pt[0] * pt[1] +
                 inv[1][1] * pt[1] * pt[1];
      double exact = std::exp(-0.5 * q) / (2.0 * M_PI * std::sqrt(det));
      gauss2_sup = std::max(gauss2_sup, std::abs(values[i] - exact));
    }
  }

  out.ok = worst_mass <= 1e-6 && worst_min >= -1e-6 && gauss_sup <= 1e-8 &&
           cauchy_sup <= 1e-6 && gauss2_sup <= 1e-8;
  out.detail = fmt("mass_err=%.1e min=%.1e gauss=%.1e cauchy=%.1e gauss2d=%.1e", worst_mass,
                   worst_min, gauss_sup, cauchy_sup, gauss2_sup);
  return out;
}

// ---------------------------------------------------------------------------
// 2. symbol: closed form vs radial quadrature on random frequencies
// ---------------------------------------------------------------------------
Outcome criterion_symbol() {
  Outcome out;
  std::vector<StableModel> models;
  models.push_back(line_model(0.7, 1.0, 3.0));
  models.push_back(line_model(1.5, 2.0, 0.5));
  models.push_back(line_model(1.5, 1.0, 1.0, 6.0));
  {
    ModelCoeffs c;
    c.measure = SphereMeasure::circle_constant(0.8);
    auto m = StableModel::constant(1.3, 2, c, 1.0);
    calibrate_constant(m);
    models.push_back(std::move(m));
  }
  {
    ModelCoeffs c;
    c.measure = SphereMeasure::circle_atoms(
        {{0.0, 1.0}, {2.0 * M_PI / 3.0, 1.0}, {4.0 * M_PI / 3.0, 1.0}});
    c.drift = {0.3, 0.1};
    auto m = StableModel::constant(1.0, 2, c, 1.0, 5.0);
    calibrate_constant(m);
    models.push_back(std::move(m));
  }

  double worst = 0.0;
  Rng rng(20260817);
  for (const auto& model : models) {
    for (int k = 0; k < 100; ++k) {
      Vec2 xi{(rng.uniform() - 0.5) * 40.0,
              model.dim() == 2 ? (rng.uniform() - 0.5) * 40.0 : 0.0};
      double t = rng.uniform() * model.horizon();
      auto a = evaluate_symbol(model, t, xi);
      auto b = evaluate_symbol_direct(model, t, xi);
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
    }
  }
  out.ok = worst <= 1e-6;
  out.detail = fmt("max_rel=%.2e over %d probes", worst, 500);
  return out;
}

// ---------------------------------------------------------------------------
// 3. sampler: KS against the spectral distribution, CF against the symbol
// ---------------------------------------------------------------------------
double sampler_ks(const StableModel& model, const FrequencyGrid& grid, std::size_t paths,
                  std::uint64_t seed) {
  std::vector<double> xs(paths);
  for (std::size_t m = 0; m < paths; ++m) {
    Rng rng(path_seed(seed, m));
    StablePathSampler sampler(model, rng);
    xs[m] = sampler.increment(0.0, 1.0, rng)[0];
  }
  std::sort(xs.begin(), xs.end());

  auto density = heat_density(model, 0.0, 1.0, grid);
  auto values = density.physical();
  std::vector<double> cdf(values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += values[i] * grid.spacing();
    cdf[i] = acc;
  }
  double ks = 0.0;
  for (std::size_t m = 0; m < paths; ++m) {
    auto idx = static_cast<std::size_t>(std::clamp(
        (xs[m] + grid.box) / grid.spacing(), 0.0, static_cast<double>(values.size() - 1)));
    double lo = static_cast<double>(m) / static_cast<double>(paths);
    double hi = static_cast<double>(m + 1) / static_cast<double>(paths);
    ks = std::max(ks, std::max(std::abs(lo - cdf[idx]), std::abs(hi - cdf[idx])));
  }
  return ks;
}

double sampler_cf_excess(const StableModel& model, std::size_t paths, std::uint64_t seed) {
  std::vector<Vec2> terminals(paths);
  for (std::size_t m = 0; m < paths; ++m) {
    Rng rng(path_seed(seed, m));
    StablePathSampler sampler(model, rng);
    terminals[m] = sampler.increment(0.0, model.horizon(), rng);
  }
  double worst = 0.0;
  Rng freq_rng(seed + 1);
  for (int k = 0; k < 20; ++k) {
    Vec2 xi{(freq_rng.uniform() - 0.5) * 24.0,
            model.dim() == 2 ? (freq_rng.uniform() - 0.5) * 24.0 : 0.0};
    std::complex<double> emp = 0.0;
    for (const auto& x : terminals) emp += std::exp(std::complex<double>(0.0, dot(xi, x)));
    emp /= static_cast<double>(paths);
    auto ref = std::exp(kernel_exponent(model, 0.0, model.horizon(), xi));
    worst = std::max(worst, std::abs(emp - ref) * std::sqrt(static_cast<double>(paths)));
  }
  return worst;  // in units of 1/sqrt(paths)
}

Outcome criterion_sampler() {
  Outcome out;
  const std::size_t paths = 100000;
  double ks_15 = sampler_ks(line_model(1.5, 1.0, 1.0), FrequencyGrid(1, 65536, 512.0), paths, 11);
  double ks_1 = sampler_ks(line_model(1.0, 1.0, 1.0), FrequencyGrid(1, 262144, 2048.0), paths, 12);
  const double ks_limit = 3.0 * 1.3581 / std::sqrt(static_cast<double>(paths)) + 0.0016;

  double cf = 0.0;
  cf = std::max(cf, sampler_cf_excess(line_model(1.5, 1.0, 1.0), 20000, 21));
  cf = std::max(cf, sampler_cf_excess(line_model(1.5, 2.0, 1.0), 20000, 22));
  cf = std::max(cf, sampler_cf_excess(line_model(0.7, 1.0, 3.0), 20000, 23));
  {
    ModelCoeffs c;
    c.measure = SphereMeasure::line(1.0, 1.0);
    c.drift = {0.6, 0.0};
    auto m = StableModel::constant(1.0, 1, c, 1.0, 4.0);
    calibrate_constant(m);
    cf = std::max(cf, sampler_cf_excess(m, 10000, 24));
  }
  {
    auto m = StableModel::smooth(
        1.5, 1,
        [](double t) {
          ModelCoeffs c;
          c.measure = SphereMeasure::line(1.0 + 0.8 * t, 1.0 + 0.8 * t);
          return c;
        },
        1.0);
    calibrate_constant(m);
    cf = std::max(cf, sampler_cf_excess(m, 20000, 25));
  }
  {
    ModelCoeffs c;
    c.measure = SphereMeasure::circle_constant(0.5);
    auto m = StableModel::constant(1.3, 2, c, 1.0);
    calibrate_constant(m);
    cf = std::max(cf, sampler_cf_excess(m, 20000, 26));
  }

  out.ok = ks_15 <= ks_limit && ks_1 <= ks_limit && cf <= 3.5;
  out.detail = fmt("ks(1.5)=%.4f ks(1)=%.4f limit=%.4f cf_sigma=%.2f limit=3.5", ks_15, ks_1,
                   ks_limit, cf);
  return out;
}

// ---------------------------------------------------------------------------
// 4. martingale moments: isometry, Doob, and bound-ratio stability
// ---------------------------------------------------------------------------
Outcome criterion_moments() {
  Outcome out;
  MarkSpace marks{{1.0, 2.0}};
  MarkSpace boosted{{10.0, 20.0}};
  const std::size_t paths = 30000;

  double worst_iso_sigma = 0.0;
  bool doob_ok = true;
  bool ratio_ok = true;
  for (double p : {2.0, 4.0}) {
    std::vector<double> ratios;
    for (int idx = 0; idx < 10; ++idx) {
      auto rep = martingale_moment_check(marks, 1.0, moment_integrand(idx), p, paths,
                                         5000 + static_cast<std::uint64_t>(idx));
      double iso_sigma = std::abs(rep.terminal_sq_mean - rep.isometry_rhs) /
                         std::max(rep.terminal_sq_stderr, 1e-300);
      worst_iso_sigma = std::max(worst_iso_sigma, iso_sigma);
      doob_ok = doob_ok && rep.doob_ratio > 1.0 && rep.doob_ratio <= 4.0;
      ratios.push_back(rep.ratio);
    }
    auto sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    double median = 0.5 * (sorted[4] + sorted[5]);
    for (double r : ratios) ratio_ok = ratio_ok && r >= 0.5 * median && r <= 1.5 * median;

    // tenfold intensity keeps the family inside the same band
    auto rescaled = martingale_moment_check(boosted, 1.0, moment_integrand(3), p, paths, 6000);
    ratio_ok = ratio_ok && rescaled.ratio >= 0.5 * median && rescaled.ratio <= 1.5 * median;
  }

  out.ok = worst_iso_sigma <= 4.0 && doob_ok && ratio_ok;
  out.detail = fmt("iso_sigma=%.2f (cap 4) doob_ok=%d ratio_band_ok=%d", worst_iso_sigma,
                   doob_ok ? 1 : 0, ratio_ok ? 1 : 0);
  return out;
}

// ---------------------------------------------------------------------------
// 5. norm equivalence: one comparability constant across fields and grids
// ---------------------------------------------------------------------------
Outcome criterion_norms() {
  Outcome out;
  auto median_ratio = [](const FrequencyGrid& grid, double& lo, double& hi) {
    LPFamily family(grid);
    Rng rng(31);
    std::vector<double> ratios;
    lo = 1e300;
    hi = 0.0;
    for (int i = 0; i < 50; ++i) {
      double width = 2.0 + 6.0 * rng.uniform();
      auto u = band_limited_field(grid, width, 0.2 + rng.uniform(),
                                  Vec2{(rng.uniform() - 0.5) * 20.0, 0.0});
      std::vector<SpectralField> series{u};
      auto rep = holder_norm(series, family, 1.5, 0.25, 2.0);
      double ratio = rep.classic / rep.lp_equiv;
      ratios.push_back(ratio);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    return 0.5 * (ratios[24] + ratios[25]);
  };

  double lo_fine = 0.0, hi_fine = 0.0, lo_coarse = 0.0, hi_coarse = 0.0;
  double c_fine = median_ratio(FrequencyGrid(1, 512, 20.0), lo_fine, hi_fine);
  double c_coarse = median_ratio(FrequencyGrid(1, 256, 20.0), lo_coarse, hi_coarse);
  double drift = std::abs(c_coarse / c_fine - 1.0);

  bool banded = lo_fine >= 0.2 * c_fine && hi_fine <= 5.0 * c_fine && lo_coarse >= 0.2 * c_coarse &&
                hi_coarse <= 5.0 * c_coarse;
  out.ok = drift <= 0.20 && banded;
  out.detail = fmt("C*(512)=%.3f C*(256)=%.3f drift=%.1f%% spread_ok=%d", c_fine, c_coarse,
                   drift * 100.0, banded ? 1 : 0);
  return out;
}

// ---------------------------------------------------------------------------
// 6. solution-scale estimates: damping decay, time increments, boundedness
// ---------------------------------------------------------------------------
Outcome criterion_estimates() {
  Outcome out;
  FrequencyGrid grid(1, 512, 20.0);
  EstimateSuiteConfig config;  // pinned defaults: p=2, 2000 paths, lambda 4..1024

  bool ok = true;
  std::string detail;
  int tag = 0;
  for (auto& model : {line_model(1.5, 1.0, 1.0), diffusion_model_1d(1.0)}) {
    auto result = run_estimate_suite(model, grid, config);
    double target = 1.0 / config.p;
    bool decay_ok = std::abs(result.decay.slope + target) <= 0.15;
    bool inc_ok = std::abs(result.increment.slope - target) <= 0.15;
    bool bound_ok = result.boundedness.min_ratio >= 0.5 * result.boundedness.median_ratio &&
                    result.boundedness.max_ratio <= 1.5 * result.boundedness.median_ratio;
    ok = ok && decay_ok && inc_ok && bound_ok;
    detail += fmt("%salpha=%.1f decay=%.3f incr=%.3f bound=[%.2f,%.2f]x", tag++ ? " | " : "",
                  model.alpha(), result.decay.slope, result.increment.slope,
                  result.boundedness.min_ratio / result.boundedness.median_ratio,
                  result.boundedness.max_ratio / result.boundedness.median_ratio);
  }
  out.ok = ok;
  out.detail = detail + " (targets -0.5/+0.5 +- 0.15)";
  return out;
}

// ---------------------------------------------------------------------------
// 7. solver residuals: exact mode at roundoff, trapezoid mode at order two
// ---------------------------------------------------------------------------
Outcome criterion_solver() {
  Outcome out;
  auto model = line_model(1.5, 1.0, 1.0, 8.0);
  FrequencyGrid grid(1, 256, 20.0);
  auto f_profile = band_limited_field(grid, 4.0, 1.0, Vec2{0.3, 0.0});
  ForcingTerm f = [&](double) { return f_profile; };
  MarkSpace marks{{1.5, 0.5}};
  auto g_profile = band_limited_field(grid, 5.0, 0.8, Vec2{-1.0, 0.0});
  MarkForcing g = [&](double, std::size_t v) {
    auto spec = g_profile.spectrum();
    for (auto& z : spec) z *= (v == 0 ? 1.0 : -0.6);
    return SpectralField::from_spectrum(grid, spec);
  };
  Rng rng(777);
  auto events = sample_prm(marks, 1.0, rng);

  SolveOptions opts;
  opts.t_end = 1.0;
  opts.dt = 1.0 / 64.0;
  opts.forcing_time_homogeneous = true;
  auto exact = residual_check(model, 2.0, &f, &g, &marks, &events, grid, opts,
                              ResidualMode::exact_exponential);
  double exact_rel = exact.max_residual / std::max(1.0, exact.state_scale);

  ForcingTerm wavy = [&](double s) {
    auto spec = f_profile.spectrum();
    for (auto& z : spec) z *= (1.0 + std::sin(3.0 * s));
    return SpectralField::from_spectrum(grid, spec);
  };
  auto trap = [&](double dt) {
    SolveOptions o;
    o.t_end = 1.0;
    o.dt = dt;
    return residual_check(model, 2.0, &wavy, nullptr, nullptr, nullptr, grid, o,
                          ResidualMode::trapezoid)
        .max_residual;
  };
  double r32 = trap(1.0 / 32.0), r64 = trap(1.0 / 64.0), r128 = trap(1.0 / 128.0);
  double q1 = r32 / r64, q2 = r64 / r128;

  // linearity of the stepping route
  ForcingTerm doubled = [&](double) {
    auto spec = f_profile.spectrum();
    for (auto& z : spec) z *= 2.0;
    return SpectralField::from_spectrum(grid, spec);
  };
  SolveOptions lin_opts;
  lin_opts.t_end = 0.5;
  lin_opts.dt = 0.05;
  lin_opts.forcing_time_homogeneous = true;
  auto one = solve_cauchy(model, 1.0, &f, nullptr, nullptr, nullptr, grid, lin_opts);
  auto two = solve_cauchy(model, 1.0, &doubled, nullptr, nullptr, nullptr, grid, lin_opts);
  auto pa = one.states.back().physical();
  auto pb = two.states.back().physical();
  double lin_err = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i)
    lin_err = std::max(lin_err, std::abs(pb[i] - 2.0 * pa[i]));

  out.ok = exact_rel <= 1e-11 && q1 >= 3.2 && q1 <= 4.8 && q2 >= 3.2 && q2 <= 4.8 &&
           lin_err <= 1e-10;
  out.detail = fmt("exact_rel=%.1e trap_ratios=%.2f/%.2f linearity=%.1e", exact_rel, q1, q2,
                   lin_err);
  return out;
}

// ---------------------------------------------------------------------------
// 8. filtering: spectral vs particle posterior, trivial-rate reduction,
//    reference-measure mass martingale
// ---------------------------------------------------------------------------
Outcome criterion_filter() {
  Outcome out;
  auto sc = demo_filter_scenario();
  auto grid = demo_filter_grid();

  Rng sim_rng(42);
  auto realization = simulate_scenario(sc, sim_rng);
  auto zakai = zakai_filter(sc, realization.observations, grid);
  Rng pf_rng(4242);
  auto pf = particle_filter(sc, realization.observations, 4000, pf_rng);
  double gap = std::abs(zakai.moments.mean[0] - pf.moments.mean[0]);
  double allowed = 3.0 * pf.mean_stderr + 0.01;

  // rate identically 1: the posterior is the prior pushed through the adjoint flow
  double reduction_gap = 0.0;
  {
    FilterScenario flat = sc;
    flat.observation.rate = [](const Vec2&, std::size_t) { return 1.0; };
    flat.observation.rate_lower = 1.0;
    flat.observation.rate_upper = 1.0;
    FrequencyGrid small(1, 1024, 30.0);
    auto filtered = zakai_filter(flat, realization.observations, small);

    auto kernel = heat_density(sc.signal, 0.0, sc.signal.horizon(), small);
    auto kvals = kernel.physical();
    std::vector<double> pvals(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) {
      double x = small.point(i)[0];
      pvals[i] = std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
    }
    int n = small.n;
    auto got = filtered.density.physical();
    double scale = std::exp(filtered.log_mass);
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int m = 0; m < n; ++m) acc += pvals[m] * kvals[((i - m + n / 2) % n + n) % n];
      acc *= small.spacing();
      peak = std::max(peak, std::abs(acc));
      reduction_gap = std::max(reduction_gap, std::abs(scale * got[i] - acc));
    }
    reduction_gap /= peak;
  }

  // ensemble of observation draws from the reference law
  const std::size_t runs = 64;
  double mean = 0.0;
  std::vector<double> masses(runs);
  {
    FilterScenario fast = sc;
    fast.dt = 2e-3;
    FrequencyGrid small(1, 1024, 30.0);
    MarkSpace reference{sc.observation.mark_weights};
    for (std::size_t k = 0; k < runs; ++k) {
      Rng rng(path_seed(2026, k));
      auto events = sample_prm(reference, sc.signal.horizon(), rng);
      masses[k] = zakai_filter(fast, events, small).total_mass;
      mean += masses[k];
    }
    mean /= static_cast<double>(runs);
  }
  double var = 0.0;
  for (double m : masses) var += (m - mean) * (m - mean);
  var /= static_cast<double>(runs - 1);
  double sem = std::sqrt(var / static_cast<double>(runs));

  bool gap_ok = gap <= allowed;
  bool reduction_ok = reduction_gap <= 1e-4;
  bool martingale_ok = std::abs(mean - 1.0) <= 3.0 * sem;
  out.ok = gap_ok && reduction_ok && martingale_ok;
  out.detail = fmt("gap=%.4f allowed=%.4f reduction=%.1e mass_mean=%.4f sem=%.4f", gap, allowed,
                   reduction_gap, mean, sem);
  return out;
}

struct Criterion {
  const char* name;
  Outcome (*run)();
  double cap_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"heat kernels resolve closed forms", criterion_kernels, 10.0},
      {"symbol routes agree", criterion_symbol, 5.0},
      {"sampler matches the law", criterion_sampler, 30.0},
      {"martingale moment bounds hold", criterion_moments, 60.0},
      {"norm equivalence is uniform", criterion_norms, 60.0},
      {"estimate slopes match theory", criterion_estimates, 600.0},
      {"solver residuals vanish", criterion_solver, 60.0},
      {"filter routes agree", criterion_filter, 300.0},
  };

  bool all_ok = true;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome outcome = c.run();
    double elapsed = seconds_since(start);
    bool timed_ok = elapsed <= c.cap_seconds;
    bool ok = outcome.ok && timed_ok;
    all_ok = all_ok && ok;
    std::printf("[%s] %d. %s: %s (%.1fs <= %.0fs)\n", ok ? "PASS" : "FAIL", index, c.name,
                outcome.detail.c_str(), elapsed, c.cap_seconds);
    std::fflush(stdout);
  }
  std::printf("%s\n", all_ok ? "acceptance: all criteria passed" : "acceptance: FAILURES above");
  return all_ok ? 0 : 1;
}
