#include "levykit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>

#include "levykit/prm.hpp"
#include "levykit/rng.hpp"
#include "levykit/solver.hpp"
#include "levykit/symbol.hpp"

namespace levykit {

SpectralField band_limited_field(const FrequencyGrid& grid, double width, double amplitude,
                                 const Vec2& shift) {
  return SpectralField::from_transform(grid, [&](const Vec2& xi) {
    const double profile = amplitude * LPFamily::bump(norm(xi) / width);
    const double phase = -dot(xi, shift);
    return std::complex<double>(profile * std::cos(phase), profile * std::sin(phase));
  });
}

std::function<double(double, std::size_t)> moment_integrand(int index) {
  switch (index) {
    case 0: return [](double, std::size_t) { return 1.0; };
    case 1: return [](double t, std::size_t) { return t; };
    case 2: return [](double t, std::size_t) { return std::sin(6.283185307179586 * t); };
    case 3: return [](double, std::size_t v) { return 1.0 + static_cast<double>(v); };
    case 4: return [](double t, std::size_t v) { return t * (1.0 + static_cast<double>(v)); };
    case 5: return [](double t, std::size_t v) { return std::cos(3.0 * t) + 0.5 * static_cast<double>(v); };
    case 6: return [](double t, std::size_t v) { return std::exp(-t) * (1.0 + 0.3 * static_cast<double>(v)); };
    case 7: return [](double t, std::size_t) { return t * t - 0.5; };
    case 8: return [](double t, std::size_t v) { return (v % 2 ? -1.0 : 1.0) * (1.0 + t); };
    case 9: return [](double t, std::size_t v) { return (1.0 + 0.5 * static_cast<double>(v)) / (1.0 + t); };
    default: throw std::invalid_argument("moment_integrand: index must be 0..9");
  }
}

namespace {

std::vector<SpectralField> mark_inputs(const FrequencyGrid& grid, double width, double shift0) {
  std::vector<SpectralField> g;
  g.push_back(band_limited_field(grid, width, 3.0, {shift0, 0.0}));
  g.push_back(band_limited_field(grid, width, 3.0, {shift0 + 2.5, 1.0}));
  return g;
}

MarkForcing forcing_for(const std::vector<SpectralField>& fields) {
  return [&fields](double, std::size_t v) { return fields.at(v); };
}

StableModel calibrated_copy(const StableModel& model) {
  StableModel m = model;
  if (m.alpha() < 2.0 && !m.calibrated()) calibrate_constant(m);
  return m;
}

}  // namespace

double fit_log_slope(const std::vector<double>& xs, const std::vector<double>& values) {
  if (xs.size() != values.size() || xs.size() < 2)
    throw std::invalid_argument("fit_log_slope: need matching series with at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = std::log(xs[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(xs.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

EstimateSuiteResult run_estimate_suite(const StableModel& model_in, const FrequencyGrid& grid,
                                       const EstimateSuiteConfig& cfg) {
  if (cfg.lambdas.empty() || cfg.increment_exponents.empty())
    throw std::invalid_argument("estimate suite: lambda and increment lists must be nonempty");
  if (!(cfg.band_limit > 0.0 && cfg.band_limit < grid.nyquist()))
    throw std::invalid_argument("estimate suite: band limit must sit inside the grid");

  const StableModel model = calibrated_copy(model_in);
  const double T = model.horizon();
  const double a1 = model.alpha() * (1.0 - 1.0 / cfg.p);  // input-space smoothness
  const double b1 = cfg.beta;

  LPFamily family(grid);
  const MarkSpace marks{{1.0, 1.0}};
  const auto fields = mark_inputs(grid, cfg.band_limit, 0.0);
  const MarkForcing g = forcing_for(fields);

  EstimateSuiteResult out;
  out.alpha_prime = a1;
  out.beta_prime = b1;

  // -- decay in lambda, common events across the lambda sweep
  {
    const std::vector<double> snaps = {0.25 * T, 0.5 * T, 0.75 * T, T};
    std::vector<HolderNormEstimator> est;
    est.reserve(cfg.lambdas.size());
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i)
      est.emplace_back(family, a1, b1, cfg.p, snaps.size());
    for (std::size_t m = 0; m < cfg.paths; ++m) {
      Rng rng(path_seed(cfg.seed, m));
      const auto events = sample_prm(marks, T, rng);
      for (std::size_t li = 0; li < cfg.lambdas.size(); ++li) {
        SolveOptions opts;
        opts.t_end = T;
        opts.dt = cfg.dt;
        opts.snapshot_times = snaps;
        opts.forcing_time_homogeneous = true;
        auto path = solve_cauchy(model, cfg.lambdas[li], nullptr, &g, &marks, &events, grid, opts);
        est[li].add_path(std::span(path.states));
      }
    }
    out.decay.xs = cfg.lambdas;
    for (auto& e : est) out.decay.values.push_back(e.finalize().classic);
    out.decay.slope = fit_log_slope(out.decay.xs, out.decay.values);
  }

  // -- increments in time at fixed lambda
  {
    std::vector<double> deltas;
    for (int k : cfg.increment_exponents) deltas.push_back(std::ldexp(T, -k));
    std::sort(deltas.begin(), deltas.end());
    const double t0 = 0.5 * T;
    std::vector<double> snaps = {t0};
    for (double d : deltas) snaps.push_back(t0 + d);
    if (snaps.back() > T)
      throw std::invalid_argument("estimate suite: increment displacement exceeds the horizon");

    std::vector<HolderNormEstimator> est;
    est.reserve(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) est.emplace_back(family, a1, b1, cfg.p, 1);
    for (std::size_t m = 0; m < cfg.paths; ++m) {
      Rng rng(path_seed(cfg.seed + 1, m));
      const auto events = sample_prm(marks, T, rng);
      SolveOptions opts;
      opts.t_end = snaps.back();
      opts.dt = cfg.dt;
      opts.snapshot_times = snaps;
      opts.forcing_time_homogeneous = true;
      auto path =
          solve_cauchy(model, cfg.increment_lambda, nullptr, &g, &marks, &events, grid, opts);
      const auto base = transform_values(path.states[0]);
      for (std::size_t di = 0; di < deltas.size(); ++di) {
        auto shifted = transform_values(path.states[1 + di]);
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] -= base[i];
        SpectralField diff = SpectralField::from_transform_values(grid, shifted);
        est[di].add_path(std::span(&diff, 1));
      }
    }
    out.increment.xs = deltas;
    for (auto& e : est) out.increment.values.push_back(e.finalize().classic);
    out.increment.slope = fit_log_slope(out.increment.xs, out.increment.values);
  }

  // -- ratio ||u||_{a,b;p} / ||g||_{a',b';r,p} across input families
  {
    const std::vector<double> snaps = {0.25 * T, 0.5 * T, 0.75 * T, T};
    for (int fam = 0; fam < cfg.boundedness_families; ++fam) {
      const double width = 0.5 * cfg.band_limit + 0.2 * cfg.band_limit * fam;
      auto fam_fields = mark_inputs(grid, std::min(width, cfg.band_limit * 1.3), 1.3 * fam);
      const MarkForcing fam_g = forcing_for(fam_fields);

      MarkNormEstimator input_norm(family, a1, b1, cfg.r, cfg.p, 1, marks.weights);
      std::vector<std::vector<SpectralField>> series;
      for (auto& f : fam_fields) series.push_back({f});
      input_norm.add_path(std::span(series));
      const double g_norm = input_norm.finalize().classic;

      HolderNormEstimator est(family, model.alpha(), cfg.beta, cfg.p, snaps.size());
      for (std::size_t m = 0; m < cfg.paths; ++m) {
        Rng rng(path_seed(cfg.seed + 2 + static_cast<std::uint64_t>(fam), m));
        const auto events = sample_prm(marks, T, rng);
        SolveOptions opts;
        opts.t_end = T;
        opts.dt = cfg.dt;
        opts.snapshot_times = snaps;
        opts.forcing_time_homogeneous = true;
        auto path = solve_cauchy(model, cfg.boundedness_lambda, nullptr, &fam_g, &marks, &events,
                                 grid, opts);
        est.add_path(std::span(path.states));
      }
      out.boundedness.ratios.push_back(est.finalize().classic / g_norm);
    }
    auto sorted = out.boundedness.ratios;
    std::sort(sorted.begin(), sorted.end());
    out.boundedness.min_ratio = sorted.front();
    out.boundedness.max_ratio = sorted.back();
    out.boundedness.median_ratio = sorted[sorted.size() / 2];
  }

  return out;
}

FilterScenario demo_filter_scenario() {
  ModelCoeffs c;
  c.measure = SphereMeasure::line(0.75, 0.75);
  StableModel signal = StableModel::constant(1.5, 1, c, 1.0, 8.0);
  calibrate_constant(signal);

  ObservationModel obs;
  obs.mark_weights = {2.0, 2.0, 2.0};
  obs.rate = [](const Vec2& x, std::size_t j) {
    static const double anchors[3] = {-2.0, 0.0, 2.0};
    const double d = x[0] - anchors[j];
    return 0.6 + 1.8 * std::exp(-0.5 * d * d);
  };
  obs.rate_lower = 0.6;
  obs.rate_upper = 2.4;

  return FilterScenario{std::move(signal), std::move(obs), GaussianPrior{{0.0, 0.0}, 1.0}, 1e-3,
                        24.0};
}

FrequencyGrid demo_filter_grid() { return FrequencyGrid(1, 2048, 30.0); }

}  // namespace levykit
