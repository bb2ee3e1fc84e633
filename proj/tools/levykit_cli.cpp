// JSON-configured experiment runner. Subcommands `run` and `validate` take a config file;
// each experiment kind is also exposed as an alias subcommand that insists the config
// matches. Outputs land under LEVYKIT_OUTPUT_ROOT (default ".") in <kind>_<seed>/ with a
// manifest.json recording the config hash, seed, version, and wall time.
//
// Exit codes: 0 success, 1 a run-level check failed or execution failed, 2 bad usage or
// bad config.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levykit/config.hpp"
#include "levykit/experiments.hpp"
#include "levykit/filtering.hpp"
#include "levykit/io.hpp"
#include "levykit/kernel.hpp"
#include "levykit/lp.hpp"
#include "levykit/prm.hpp"
#include "levykit/rng.hpp"
#include "levykit/solver.hpp"
#include "levykit/symbol.hpp"
#include "levykit/version.hpp"

using namespace levykit;

namespace {

struct RunContext {
  const RunConfig& cfg;
  std::string dir;
  RunManifest manifest;

  explicit RunContext(const RunConfig& config)
      : cfg(config), dir(output_root() + "/" + config.kind + "_" + std::to_string(config.seed)) {
    manifest.kind = config.kind;
    manifest.config_path = config.path;
    manifest.config_hash = config.path == "<inline>" ? 0 : fnv1a_file(config.path);
    manifest.seed = config.seed;
    manifest.version = kVersion;
  }

  std::string file(const std::string& label, const std::string& name) {
    const std::string path = dir + "/" + name;
    manifest.outputs.emplace_back(label, path);
    return path;
  }
};

StableModel required_model(const RunConfig& cfg) {
  if (!cfg.model) throw std::invalid_argument(cfg.kind + ": config needs a model block");
  StableModel m = *cfg.model;
  if (m.alpha() < 2.0) calibrate_constant(m);
  return m;
}

FrequencyGrid required_grid(const RunConfig& cfg) {
  if (!cfg.grid) throw std::invalid_argument(cfg.kind + ": config needs a grid block");
  return *cfg.grid;
}

int run_symbol_check(RunContext& ctx) {
  StableModel model = required_model(ctx.cfg);
  const auto& extras = ctx.cfg.extras;
  const int probes = extras.value("probes", 100);
  const double tol = extras.value("tolerance", 1e-6);

  CalibrationReport cal{0.0, 0.0, 0};
  if (model.alpha() < 2.0) cal = calibrate_constant(model);
  const ModelDiagnostics diag = check_assumptions(model);

  Rng rng(ctx.cfg.seed);
  std::vector<std::vector<double>> rows;
  double max_rel = 0.0;
  for (int i = 0; i < probes; ++i) {
    const double t = rng.uniform() * model.horizon();
    Vec2 xi{(2.0 * rng.uniform() - 1.0) * 20.0, 0.0};
    if (model.dim() == 2) xi[1] = (2.0 * rng.uniform() - 1.0) * 20.0;
    const auto factored = evaluate_symbol(model, t, xi);
    const auto direct = evaluate_symbol_direct(model, t, xi);
    const double scale = std::max({std::abs(factored), std::abs(direct), 1e-300});
    const double rel = std::abs(factored - direct) / scale;
    max_rel = std::max(max_rel, rel);
    rows.push_back({t, xi[0], xi[1], factored.real(), factored.imag(), direct.real(),
                    direct.imag(), rel});
  }
  write_csv(ctx.file("probes", "symbol_check.csv"),
            {"t", "xi0", "xi1", "factored_re", "factored_im", "direct_re", "direct_im",
             "rel_err"},
            rows);

  const bool ok = max_rel <= tol && cal.max_rel_error <= tol && diag.uniformly_elliptic &&
                  diag.coefficients_bounded;
  std::printf("symbol-check: max_rel_err=%.3g calibration_residual=%.3g elliptic=%s bounded=%s -> %s\n",
              max_rel, cal.max_rel_error, diag.uniformly_elliptic ? "yes" : "no",
              diag.coefficients_bounded ? "yes" : "no", ok ? "ok" : "FAIL");
  return ok ? 0 : 1;
}

int run_kernel(RunContext& ctx) {
  const StableModel model = required_model(ctx.cfg);
  const FrequencyGrid grid = required_grid(ctx.cfg);
  const auto& extras = ctx.cfg.extras;
  const double s = extras.value("s", 0.0);
  const double t = extras.value("t", model.horizon());
  const double mass_tol = extras.value("mass_tolerance", 1e-5);
  const double neg_tol = extras.value("negativity_tolerance", 1e-6);
  if (extras.value("check_resolved", true))
    require_resolved(model, s, t, grid, extras.value("tail_tolerance", 1e-6));

  SpectralField density = heat_density(model, s, t, grid);
  const KernelDiagnostics diag = density_diagnostics(model, s, t, density);
  write_snapshot(ctx.file("density", "kernel.lksf"), density, s, t, 0.0,
                 SnapshotForm::physical);
  write_csv(ctx.file("diagnostics", "kernel_diagnostics.csv"),
            {"mass", "min_value", "imag_residue", "tail_mass_estimate", "edge_density"},
            {{diag.mass, diag.min_value, diag.imag_residue, diag.tail_mass_estimate,
              diag.edge_density}});

  const bool ok = std::abs(diag.mass - 1.0) <= mass_tol && diag.min_value >= -neg_tol;
  std::printf("kernel: mass=%.12g min=%.3g imag=%.3g tail<=%.3g -> %s\n", diag.mass,
              diag.min_value, diag.imag_residue, diag.tail_mass_estimate, ok ? "ok" : "FAIL");
  return ok ? 0 : 1;
}

int run_moments(RunContext& ctx) {
  const auto& extras = ctx.cfg.extras;
  std::vector<double> weights = {1.0, 2.0};
  if (extras.contains("mark_weights")) weights = extras["mark_weights"].get<std::vector<double>>();
  const MarkSpace marks{weights};
  const double horizon = extras.value("horizon", 1.0);
  const auto paths = static_cast<std::size_t>(extras.value("paths", 20000));
  std::vector<double> p_list = {2.0, 4.0};
  if (extras.contains("p")) p_list = extras["p"].get<std::vector<double>>();
  const auto g = moment_integrand(extras.value("integrand", 0));

  bool ok = true;
  std::vector<std::vector<double>> rows;
  for (double p : p_list) {
    const auto rep = martingale_moment_check(marks, horizon, g, p, paths, ctx.cfg.seed);
    const double iso_sigma = std::abs(rep.terminal_sq_mean - rep.isometry_rhs) /
                             std::max(rep.terminal_sq_stderr, 1e-300);
    rows.push_back({p, static_cast<double>(rep.paths), rep.sup_moment, rep.sup_moment_stderr,
                    rep.bound_rhs, rep.ratio, rep.terminal_sq_mean, rep.isometry_rhs, iso_sigma,
                    rep.doob_ratio});
    const bool row_ok = iso_sigma <= 4.0 && rep.doob_ratio > 1.0 && rep.doob_ratio <= 4.0;
    ok = ok && row_ok;
    std::printf("moments p=%g: sup=%.6g bound=%.6g ratio=%.3f iso_sigma=%.2f doob=%.3f -> %s\n",
                p, rep.sup_moment, rep.bound_rhs, rep.ratio, iso_sigma, rep.doob_ratio,
                row_ok ? "ok" : "FAIL");
  }
  write_csv(ctx.file("report", "moments.csv"),
            {"p", "paths", "sup_moment", "sup_stderr", "bound_rhs", "ratio", "terminal_sq",
             "isometry_rhs", "isometry_sigma", "doob_ratio"},
            rows);
  return ok ? 0 : 1;
}

int run_solve(RunContext& ctx) {
  const StableModel model = required_model(ctx.cfg);
  const FrequencyGrid grid = required_grid(ctx.cfg);
  const auto& extras = ctx.cfg.extras;
  const double lambda = extras.value("lambda", 4.0);
  SolveOptions opts;
  opts.t_end = extras.value("t_end", model.horizon());
  opts.dt = extras.value("dt", 1e-2);
  if (extras.contains("snapshots"))
    opts.snapshot_times = extras["snapshots"].get<std::vector<double>>();
  opts.forcing_time_homogeneous = true;

  const ForcingTerm* f_ptr = nullptr;
  ForcingTerm f;
  SpectralField f_field = SpectralField::from_point_values(grid, [](const Vec2&) { return 0.0; });
  if (extras.contains("f_width")) {
    f_field = band_limited_field(grid, extras["f_width"].get<double>(),
                                 extras.value("f_amplitude", 1.0), {0.0, 0.0});
    f = [&f_field](double) { return f_field; };
    f_ptr = &f;
  }

  const MarkForcing* g_ptr = nullptr;
  MarkForcing g;
  std::vector<SpectralField> g_fields;
  std::vector<double> weights = {1.0, 1.0};
  if (extras.contains("mark_weights")) weights = extras["mark_weights"].get<std::vector<double>>();
  MarkSpace marks{weights};
  std::vector<PRMEvent> events;
  if (extras.contains("g_width")) {
    const double width = extras["g_width"].get<double>();
    const double amp = extras.value("g_amplitude", 1.0);
    for (std::size_t v = 0; v < weights.size(); ++v)
      g_fields.push_back(band_limited_field(grid, width, amp, {1.7 * static_cast<double>(v), 0.0}));
    g = [&g_fields](double, std::size_t v) { return g_fields.at(v); };
    g_ptr = &g;
    Rng rng(ctx.cfg.seed);
    events = sample_prm(marks, opts.t_end, rng);
    write_events_csv(ctx.file("events", "events.csv"), events);
  }
  if (!f_ptr && !g_ptr)
    throw std::invalid_argument("solve: need f_width and/or g_width in the config");

  auto path = solve_cauchy(model, lambda, f_ptr, g_ptr, g_ptr ? &marks : nullptr,
                           g_ptr ? &events : nullptr, grid, opts);
  for (std::size_t i = 0; i < path.states.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "state_%03zu.lksf", i);
    write_snapshot(ctx.file(name, name), path.states[i], 0.0, path.times[i], lambda,
                   SnapshotForm::transform);
  }

  const auto exact = residual_check(model, lambda, f_ptr, g_ptr, g_ptr ? &marks : nullptr,
                                    g_ptr ? &events : nullptr, grid, opts,
                                    ResidualMode::exact_exponential);
  const auto trap = residual_check(model, lambda, f_ptr, g_ptr, g_ptr ? &marks : nullptr,
                                   g_ptr ? &events : nullptr, grid, opts,
                                   ResidualMode::trapezoid);
  write_csv(ctx.file("residuals", "residuals.csv"),
            {"mode", "max_residual", "state_scale"},
            {{0.0, exact.max_residual, exact.state_scale},
             {1.0, trap.max_residual, trap.state_scale}});

  const double rel_tol = extras.value("residual_tolerance", 1e-9);
  const bool ok = exact.max_residual <= rel_tol * std::max(1.0, exact.state_scale);
  std::printf("solve: states=%zu exact_residual=%.3g trapezoid_residual=%.3g scale=%.3g -> %s\n",
              path.states.size(), exact.max_residual, trap.max_residual, exact.state_scale,
              ok ? "ok" : "FAIL");
  return ok ? 0 : 1;
}

int run_estimates(RunContext& ctx) {
  const StableModel model = required_model(ctx.cfg);
  const FrequencyGrid grid = required_grid(ctx.cfg);
  const auto& extras = ctx.cfg.extras;

  EstimateSuiteConfig esc;
  esc.seed = ctx.cfg.seed;
  esc.p = extras.value("p", esc.p);
  esc.r = extras.value("r", esc.r);
  esc.beta = extras.value("beta", esc.beta);
  esc.paths = static_cast<std::size_t>(extras.value("paths", 2000));
  esc.dt = extras.value("dt", esc.dt);
  esc.band_limit = extras.value("band_limit", esc.band_limit);
  if (extras.contains("lambdas")) esc.lambdas = extras["lambdas"].get<std::vector<double>>();
  esc.increment_lambda = extras.value("increment_lambda", esc.increment_lambda);
  esc.boundedness_lambda = extras.value("boundedness_lambda", esc.boundedness_lambda);
  esc.boundedness_families = extras.value("boundedness_families", esc.boundedness_families);
  const double slope_tol = extras.value("slope_tolerance", 0.15);

  const auto result = run_estimate_suite(model, grid, esc);

  std::vector<std::vector<double>> decay_rows, inc_rows, bound_rows;
  for (std::size_t i = 0; i < result.decay.xs.size(); ++i)
    decay_rows.push_back({result.decay.xs[i], result.decay.values[i]});
  for (std::size_t i = 0; i < result.increment.xs.size(); ++i)
    inc_rows.push_back({result.increment.xs[i], result.increment.values[i]});
  for (std::size_t i = 0; i < result.boundedness.ratios.size(); ++i)
    bound_rows.push_back({static_cast<double>(i), result.boundedness.ratios[i]});
  write_csv(ctx.file("decay", "decay.csv"), {"lambda", "norm"}, decay_rows);
  write_csv(ctx.file("increment", "increment.csv"), {"delta", "norm"}, inc_rows);
  write_csv(ctx.file("boundedness", "boundedness.csv"), {"family", "ratio"}, bound_rows);

  const double expected = 1.0 / esc.p;
  const bool decay_ok = std::abs(result.decay.slope + expected) <= slope_tol;
  const bool inc_ok = std::abs(result.increment.slope - expected) <= slope_tol;
  const bool bound_ok =
      result.boundedness.min_ratio >= 0.5 * result.boundedness.median_ratio &&
      result.boundedness.max_ratio <= 1.5 * result.boundedness.median_ratio;
  std::printf("estimates: decay_slope=%.3f (want %.3f) increment_slope=%.3f (want %.3f) "
              "ratio_spread=[%.3f, %.3f]x median -> %s\n",
              result.decay.slope, -expected, result.increment.slope, expected,
              result.boundedness.min_ratio / result.boundedness.median_ratio,
              result.boundedness.max_ratio / result.boundedness.median_ratio,
              decay_ok && inc_ok && bound_ok ? "ok" : "FAIL");
  return decay_ok && inc_ok && bound_ok ? 0 : 1;
}

int run_filter(RunContext& ctx) {
  const auto& extras = ctx.cfg.extras;
  FilterScenario sc = demo_filter_scenario();
  sc.dt = extras.value("dt", sc.dt);
  sc.moment_box = extras.value("moment_box", sc.moment_box);
  const FrequencyGrid grid = ctx.cfg.grid ? *ctx.cfg.grid : demo_filter_grid();
  const auto particles = static_cast<std::size_t>(extras.value("particles", 4000));

  Rng rng(ctx.cfg.seed);
  const auto realization = simulate_scenario(sc, rng);
  auto zakai = zakai_filter(sc, realization.observations, grid);
  const auto pf = particle_filter(sc, realization.observations, particles, rng);

  write_snapshot(ctx.file("density", "zakai_density.lksf"), zakai.density, 0.0,
                 sc.signal.horizon(), 0.0, SnapshotForm::physical);
  write_events_csv(ctx.file("observations", "observations.csv"), realization.observations);
  const double terminal = realization.states.back()[0];
  write_csv(ctx.file("summary", "filter_summary.csv"),
            {"observations", "signal_terminal", "zakai_mean", "zakai_variance", "zakai_mass",
             "zakai_total_mass", "pf_mean", "pf_variance", "pf_ess", "pf_mean_stderr",
             "pf_variance_stderr"},
            {{static_cast<double>(realization.observations.size()), terminal,
              zakai.moments.mean[0], zakai.moments.variance, zakai.moments.mass,
              zakai.total_mass, pf.moments.mean[0], pf.moments.variance, pf.ess,
              pf.mean_stderr, pf.variance_stderr}});

  const double gap = std::abs(zakai.moments.mean[0] - pf.moments.mean[0]);
  const double allowed = 3.0 * pf.mean_stderr + extras.value("mean_tolerance", 0.01);
  const bool ok = gap <= allowed;
  std::printf("filter: events=%zu zakai_mean=%.4f pf_mean=%.4f gap=%.4f allowed=%.4f ess=%.0f -> %s\n",
              realization.observations.size(), zakai.moments.mean[0], pf.moments.mean[0], gap,
              allowed, pf.ess, ok ? "ok" : "FAIL");
  return ok ? 0 : 1;
}

int dispatch(const RunConfig& cfg) {
  RunContext ctx(cfg);
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  if (cfg.kind == "symbol-check") code = run_symbol_check(ctx);
  else if (cfg.kind == "kernel") code = run_kernel(ctx);
  else if (cfg.kind == "moments") code = run_moments(ctx);
  else if (cfg.kind == "solve") code = run_solve(ctx);
  else if (cfg.kind == "estimates") code = run_estimates(ctx);
  else if (cfg.kind == "filter") code = run_filter(ctx);
  else throw std::invalid_argument("unknown kind " + cfg.kind);
  ctx.manifest.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  write_manifest(ctx.dir + "/manifest.json", ctx.manifest);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for stable-driven parabolic equations"};
  app.require_subcommand(1);

  std::string config_path;
  const std::vector<std::string> kinds = {"symbol-check", "kernel", "moments",
                                          "solve",        "estimates", "filter"};
  auto* run = app.add_subcommand("run", "execute a JSON-configured experiment");
  run->add_option("config", config_path, "JSON config file")->required();
  auto* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("config", config_path, "JSON config file")->required();
  for (const auto& kind : kinds) {
    auto* sub = app.add_subcommand(kind, "run a '" + kind + "' config");
    sub->add_option("config", config_path, "JSON config file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string sub = app.get_subcommands().at(0)->get_name();
  try {
    const RunConfig cfg = load_config(config_path);
    if (sub == "validate") {
      std::printf("valid: kind=%s seed=%llu grid=%s model=%s\n", cfg.kind.c_str(),
                  static_cast<unsigned long long>(cfg.seed), cfg.grid ? "yes" : "no",
                  cfg.model ? "yes" : "no");
      return 0;
    }
    if (sub != "run" && sub != cfg.kind) {
      std::fprintf(stderr, "error: config kind '%s' does not match subcommand '%s'\n",
                   cfg.kind.c_str(), sub.c_str());
      return 2;
    }
    return dispatch(cfg);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
