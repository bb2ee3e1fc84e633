#include "levykit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levykit/kernel.hpp"
#include "levykit/symbol.hpp"

namespace levykit {

std::vector<std::complex<double>> transform_values(SpectralField& f) {
  const auto& spec = f.spectrum();
  const FrequencyGrid grid = f.grid();
  const double cell = grid.cell();
  std::vector<std::complex<double>> out(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) out[k] = cell * grid.parity(k) * spec[k];
  return out;
}

SpectralField apply_R_lambda(const StableModel& model, double lambda, const ForcingTerm& f,
                             double t, const FrequencyGrid& grid, int quadrature_points) {
  if (!(t >= 0.0 && t <= model.horizon() + 1e-12))
    throw std::invalid_argument("apply_R_lambda: t outside [0, horizon]");
  if (quadrature_points < 1) throw std::invalid_argument("apply_R_lambda: need >= 1 panels");
  const std::size_t count = grid.size();
  std::vector<std::complex<double>> acc(count, {0.0, 0.0});
  const double h = t / quadrature_points;
  for (int q = 0; q < quadrature_points && t > 0.0; ++q) {
    const double s = (q + 0.5) * h;
    SpectralField fs = f(s);
    const auto fhat = transform_values(fs);
    const auto mult = kernel_multiplier(model, s, t, lambda, grid);
    for (std::size_t k = 0; k < count; ++k) acc[k] += h * mult[k] * fhat[k];
  }
  return SpectralField::from_transform_values(grid, acc);
}

SpectralField apply_Rtilde_lambda(const StableModel& model, double lambda, const MarkForcing& g,
                                  const MarkSpace& marks, const std::vector<PRMEvent>& events,
                                  double t, const FrequencyGrid& grid, int quadrature_points) {
  if (!(t >= 0.0 && t <= model.horizon() + 1e-12))
    throw std::invalid_argument("apply_Rtilde_lambda: t outside [0, horizon]");
  if (quadrature_points < 1) throw std::invalid_argument("apply_Rtilde_lambda: need >= 1 panels");
  const std::size_t count = grid.size();
  std::vector<std::complex<double>> acc(count, {0.0, 0.0});

  for (const auto& e : events) {
    if (e.time > t) continue;
    SpectralField ge = g(e.time, e.mark);
    const auto ghat = transform_values(ge);
    const auto mult = kernel_multiplier(model, e.time, t, lambda, grid);
    for (std::size_t k = 0; k < count; ++k) acc[k] += mult[k] * ghat[k];
  }

  const double h = t / quadrature_points;
  for (int q = 0; q < quadrature_points && t > 0.0; ++q) {
    const double s = (q + 0.5) * h;
    std::vector<std::complex<double>> gbar(count, {0.0, 0.0});
    for (std::size_t v = 0; v < marks.weights.size(); ++v) {
      if (marks.weights[v] == 0.0) continue;
      SpectralField gv = g(s, v);
      const auto ghat = transform_values(gv);
      for (std::size_t k = 0; k < count; ++k) gbar[k] += marks.weights[v] * ghat[k];
    }
    const auto mult = kernel_multiplier(model, s, t, lambda, grid);
    for (std::size_t k = 0; k < count; ++k) acc[k] -= h * mult[k] * gbar[k];
  }
  return SpectralField::from_transform_values(grid, acc);
}

namespace {

struct SteppingResult {
  SolvePath path;
  ResidualReport residual;
};

std::vector<double> step_times(double t_end, double dt, const std::vector<PRMEvent>* events,
                               const std::vector<double>& snapshots) {
  std::vector<double> times;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
  times.reserve(steps + 2 + snapshots.size() + (events ? events->size() : 0));
  for (std::size_t i = 0; i <= steps; ++i) times.push_back(std::min(i * dt, t_end));
  if (events)
    for (const auto& e : *events)
      if (e.time <= t_end) times.push_back(e.time);
  for (double s : snapshots) times.push_back(s);
  times.push_back(t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.front() != 0.0) times.insert(times.begin(), 0.0);
  return times;
}

SteppingResult run_stepping(const StableModel& model, double lambda, const ForcingTerm* f,
                            const MarkForcing* g, const MarkSpace* marks,
                            const std::vector<PRMEvent>* events, const FrequencyGrid& grid,
                            const SolveOptions& opts, bool want_residual, ResidualMode mode) {
  const double t_end = opts.t_end == 0.0 ? model.horizon() : opts.t_end;
  if (!(t_end > 0.0 && t_end <= model.horizon() + 1e-12))
    throw std::invalid_argument("solve: t_end outside (0, horizon]");
  if (!(opts.dt > 0.0)) throw std::invalid_argument("solve: dt must be positive");
  if (g && (!marks || !events))
    throw std::invalid_argument("solve: mark forcing needs a mark space and an event list");
  if (g && !std::is_sorted(events->begin(), events->end(),
                           [](const PRMEvent& x, const PRMEvent& y) { return x.time < y.time; }))
    throw std::invalid_argument("solve: events must be sorted by time");
  std::vector<double> snapshots = opts.snapshot_times;
  if (snapshots.empty()) snapshots = {t_end};
  if (!std::is_sorted(snapshots.begin(), snapshots.end()))
    throw std::invalid_argument("solve: snapshot times must be sorted");
  if (snapshots.front() < 0.0 || snapshots.back() > t_end + 1e-12)
    throw std::invalid_argument("solve: snapshot times outside [0, t_end]");

  const std::size_t count = grid.size();
  const bool homog_symbol = model.time_homogeneous();
  const bool homog_forcing = opts.forcing_time_homogeneous;

  std::vector<std::complex<double>> psi;
  if (homog_symbol) psi = symbol_field(model, 0.0, grid);

  std::vector<std::complex<double>> fhat_cache;
  std::vector<std::vector<std::complex<double>>> ghat_cache;
  std::vector<std::complex<double>> gbar_cache;
  if (homog_forcing) {
    if (f) {
      SpectralField f0 = (*f)(0.0);
      fhat_cache = transform_values(f0);
    }
    if (g) {
      ghat_cache.resize(marks->weights.size());
      gbar_cache.assign(count, {0.0, 0.0});
      for (std::size_t v = 0; v < marks->weights.size(); ++v) {
        SpectralField gv = (*g)(0.0, v);
        ghat_cache[v] = transform_values(gv);
        for (std::size_t k = 0; k < count; ++k)
          gbar_cache[k] += marks->weights[v] * ghat_cache[v][k];
      }
    }
  }

  // effective forcing transform f - gbar at time s
  auto forcing_at = [&](double s) {
    std::vector<std::complex<double>> out(count, {0.0, 0.0});
    if (f) {
      if (homog_forcing) {
        out = fhat_cache;
      } else {
        SpectralField fs = (*f)(s);
        out = transform_values(fs);
      }
    }
    if (g) {
      if (homog_forcing) {
        for (std::size_t k = 0; k < count; ++k) out[k] -= gbar_cache[k];
      } else {
        for (std::size_t v = 0; v < marks->weights.size(); ++v) {
          if (marks->weights[v] == 0.0) continue;
          SpectralField gv = (*g)(s, v);
          const auto ghat = transform_values(gv);
          for (std::size_t k = 0; k < count; ++k) out[k] -= marks->weights[v] * ghat[k];
        }
      }
    }
    return out;
  };
  auto event_jump = [&](const PRMEvent& e) {
    if (homog_forcing) return ghat_cache[e.mark];
    SpectralField gv = (*g)(e.time, e.mark);
    return transform_values(gv);
  };

  const auto times = step_times(t_end, opts.dt, g ? events : nullptr, snapshots);
  std::vector<std::complex<double>> state(count, {0.0, 0.0});
  std::vector<std::complex<double>> identity_acc;
  if (want_residual) identity_acc.assign(count, {0.0, 0.0});

  SteppingResult result;
  std::size_t next_snapshot = 0;
  std::size_t next_event = 0;
  auto record_if_snapshot = [&](double tau) {
    while (next_snapshot < snapshots.size() && snapshots[next_snapshot] <= tau + 1e-15) {
      result.path.times.push_back(snapshots[next_snapshot]);
      result.path.states.push_back(SpectralField::from_transform_values(grid, state));
      ++next_snapshot;
    }
  };
  record_if_snapshot(0.0);

  std::vector<std::complex<double>> exponent(count), bigE(count), bigW(count);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double a = times[i], b = times[i + 1];
    const double delta = b - a;
    if (homog_symbol) {
      for (std::size_t k = 0; k < count; ++k) exponent[k] = psi[k] * delta;
    } else {
      std::fill(exponent.begin(), exponent.end(), std::complex<double>{0.0, 0.0});
      for (const auto& [sample, weight] : model.quadrature_nodes(a, b)) {
        const auto psis = symbol_field(model, sample, grid);
        for (std::size_t k = 0; k < count; ++k) exponent[k] += weight * psis[k];
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      const std::complex<double> z = exponent[k] - lambda * delta;
      const std::complex<double> e = std::exp(z);
      bigE[k] = e;
      if (std::abs(z) < 1e-6)
        bigW[k] = delta * (1.0 + z * (0.5 + z / 6.0));
      else
        bigW[k] = delta * (e - 1.0) / z;
    }
    const auto fmid = forcing_at(0.5 * (a + b));

    if (want_residual && mode == ResidualMode::trapezoid) {
      // trapezoid of (psi - lambda) u + F with the step-average symbol at both endpoints
      const auto f_a = forcing_at(a);
      const auto f_b = forcing_at(b);
      for (std::size_t k = 0; k < count; ++k) {
        const std::complex<double> q = exponent[k] / delta - lambda;
        const std::complex<double> left = q * state[k] + f_a[k];
        const std::complex<double> pre_b = bigE[k] * state[k] + bigW[k] * fmid[k];
        const std::complex<double> right = q * pre_b + f_b[k];
        identity_acc[k] += 0.5 * delta * (left + right);
        state[k] = pre_b;
      }
    } else if (want_residual) {
      for (std::size_t k = 0; k < count; ++k) {
        identity_acc[k] += (bigE[k] - 1.0) * state[k] + bigW[k] * fmid[k];
        state[k] = bigE[k] * state[k] + bigW[k] * fmid[k];
      }
    } else {
      for (std::size_t k = 0; k < count; ++k) state[k] = bigE[k] * state[k] + bigW[k] * fmid[k];
    }

    if (g) {
      while (next_event < events->size() && (*events)[next_event].time <= b) {
        const auto& e = (*events)[next_event];
        if (e.time == b) {
          const auto jump = event_jump(e);
          for (std::size_t k = 0; k < count; ++k) {
            state[k] += jump[k];
            if (want_residual) identity_acc[k] += jump[k];
          }
        }
        if (e.time <= b) ++next_event;
      }
    }
    record_if_snapshot(b);
  }

  if (want_residual) {
    double max_res = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      max_res = std::max(max_res, std::abs(state[k] - identity_acc[k]));
      scale = std::max(scale, std::abs(state[k]));
    }
    result.residual.max_residual = max_res;
    result.residual.state_scale = scale;
  }
  return result;
}

}  // namespace

SolvePath solve_cauchy(const StableModel& model, double lambda, const ForcingTerm* f,
                       const MarkForcing* g, const MarkSpace* marks,
                       const std::vector<PRMEvent>* events, const FrequencyGrid& grid,
                       const SolveOptions& opts) {
  return run_stepping(model, lambda, f, g, marks, events, grid, opts, false,
                      ResidualMode::exact_exponential)
      .path;
}

ResidualReport residual_check(const StableModel& model, double lambda, const ForcingTerm* f,
                              const MarkForcing* g, const MarkSpace* marks,
                              const std::vector<PRMEvent>* events, const FrequencyGrid& grid,
                              const SolveOptions& opts, ResidualMode mode) {
  return run_stepping(model, lambda, f, g, marks, events, grid, opts, true, mode).residual;
}

}  // namespace levykit
