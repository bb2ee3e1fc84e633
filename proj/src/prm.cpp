#include "levykit/prm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levykit {

double MarkSpace::total() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

std::vector<double> MarkSpace::cumulative() const {
  std::vector<double> c(weights.size());
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw std::invalid_argument("MarkSpace: weights must be >= 0");
    s += weights[i];
    c[i] = s;
  }
  if (!(s > 0.0)) throw std::invalid_argument("MarkSpace: total intensity must be positive");
  return c;
}

std::vector<PRMEvent> sample_prm(const MarkSpace& marks, double horizon, Rng& rng) {
  if (!(horizon > 0.0)) throw std::invalid_argument("sample_prm: horizon must be positive");
  const auto cum = marks.cumulative();
  const std::uint64_t count = rng.poisson(marks.total() * horizon);
  std::vector<PRMEvent> events(count);
  for (auto& e : events) e.time = horizon * rng.uniform_pos();
  std::sort(events.begin(), events.end(),
            [](const PRMEvent& a, const PRMEvent& b) { return a.time < b.time; });
  for (auto& e : events) e.mark = rng.categorical(cum);
  return events;
}

namespace {

// union of a uniform mesh, the event times, and the endpoints; sorted
std::vector<double> refined_times(const std::vector<PRMEvent>& events, double t_end, int mesh) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(mesh) + events.size() + 2);
  for (int i = 0; i <= mesh; ++i) times.push_back(t_end * static_cast<double>(i) / mesh);
  for (const auto& e : events)
    if (e.time <= t_end) times.push_back(e.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace

CompensatedPath compensated_integral(const std::vector<PRMEvent>& events, const MarkSpace& marks,
                                     double horizon,
                                     const std::function<double(double, std::size_t)>& g,
                                     int mesh) {
  if (mesh < 2) throw std::invalid_argument("compensated_integral: mesh too small");
  const auto times = refined_times(events, horizon, mesh);
  auto gbar = [&](double s) {
    double acc = 0.0;
    for (std::size_t v = 0; v < marks.weights.size(); ++v) acc += marks.weights[v] * g(s, v);
    return acc;
  };

  CompensatedPath out;
  double q = 0.0;
  double prev_t = 0.0;
  double prev_gbar = gbar(0.0);
  std::size_t next_event = 0;
  for (double tau : times) {
    if (tau > 0.0) {
      const double cur = gbar(tau);
      q -= 0.5 * (prev_gbar + cur) * (tau - prev_t);
      prev_gbar = cur;
      prev_t = tau;
    }
    out.sup_abs = std::max(out.sup_abs, std::abs(q));  // left limit at tau
    while (next_event < events.size() && events[next_event].time == tau) {
      q += g(tau, events[next_event].mark);
      ++next_event;
    }
    out.sup_abs = std::max(out.sup_abs, std::abs(q));
  }
  out.terminal = q;
  return out;
}

SpectralField compensated_field_integral(const std::vector<PRMEvent>& events,
                                         const MarkSpace& marks, double t,
                                         const FrequencyGrid& grid,
                                         const std::function<SpectralField(double, std::size_t)>& g,
                                         int mesh) {
  if (mesh < 2) throw std::invalid_argument("compensated_field_integral: mesh too small");
  const std::size_t count = grid.size();
  std::vector<std::complex<double>> acc(count, {0.0, 0.0});

  auto add_scaled = [&](double scale, SpectralField f) {
    const auto& spec = f.spectrum();
    for (std::size_t k = 0; k < count; ++k) acc[k] += scale * spec[k];
  };
  auto gbar_at = [&](double s, double scale) {
    for (std::size_t v = 0; v < marks.weights.size(); ++v)
      if (marks.weights[v] != 0.0) add_scaled(-scale * marks.weights[v], g(s, v));
  };

  for (const auto& e : events)
    if (e.time <= t) add_scaled(1.0, g(e.time, e.mark));

  const auto times = refined_times(events, t, mesh);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double h = times[i + 1] - times[i];
    gbar_at(times[i], 0.5 * h);
    gbar_at(times[i + 1], 0.5 * h);
  }
  return SpectralField::from_spectrum(grid, std::move(acc));
}

MartingaleReport martingale_moment_check(const MarkSpace& marks, double horizon,
                                         const std::function<double(double, std::size_t)>& g,
                                         double p, std::size_t paths, std::uint64_t seed) {
  if (!(p >= 2.0)) throw std::invalid_argument("martingale_moment_check: p must be >= 2");
  if (paths < 2) throw std::invalid_argument("martingale_moment_check: need at least 2 paths");

  double sum_p = 0.0, sum_2p = 0.0, sum_sq = 0.0, sum_term_sq = 0.0, sum_term_4 = 0.0;
  for (std::size_t m = 0; m < paths; ++m) {
    Rng rng(path_seed(seed, m));
    const auto events = sample_prm(marks, horizon, rng);
    const auto path = compensated_integral(events, marks, horizon, g);
    const double vp = std::pow(path.sup_abs, p);
    sum_p += vp;
    sum_2p += vp * vp;
    sum_sq += path.sup_abs * path.sup_abs;
    const double t2 = path.terminal * path.terminal;
    sum_term_sq += t2;
    sum_term_4 += t2 * t2;
  }
  const double M = static_cast<double>(paths);

  MartingaleReport rep;
  rep.paths = paths;
  const double mean_p = sum_p / M;
  rep.sup_moment = std::pow(mean_p, 1.0 / p);
  const double var_mean_p = std::max(0.0, sum_2p / M - mean_p * mean_p) / M;
  if (mean_p > 0.0)
    rep.sup_moment_stderr = std::pow(mean_p, 1.0 / p - 1.0) / p * std::sqrt(var_mean_p);
  rep.terminal_sq_mean = sum_term_sq / M;
  rep.terminal_sq_stderr =
      std::sqrt(std::max(0.0, sum_term_4 / M - rep.terminal_sq_mean * rep.terminal_sq_mean) / M);
  rep.doob_ratio = rep.terminal_sq_mean > 0.0 ? (sum_sq / M) / rep.terminal_sq_mean : 0.0;

  // deterministic side: Simpson quadrature of s -> sum_v |g(s,v)|^l Pi_v
  auto integral = [&](double l) {
    const int panels = 512;
    const double h = horizon / panels;
    auto integrand = [&](double s) {
      double acc = 0.0;
      for (std::size_t v = 0; v < marks.weights.size(); ++v)
        acc += marks.weights[v] * std::pow(std::abs(g(s, v)), l);
      return acc;
    };
    double acc = integrand(0.0) + integrand(horizon);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * integrand(i * h);
    return acc * h / 3.0;
  };
  rep.isometry_rhs = integral(2.0);
  rep.bound_rhs = std::sqrt(rep.isometry_rhs);
  if (p != 2.0) rep.bound_rhs += std::pow(integral(p), 1.0 / p);
  else rep.bound_rhs += std::sqrt(rep.isometry_rhs);
  rep.ratio = rep.bound_rhs > 0.0 ? rep.sup_moment / rep.bound_rhs : 0.0;
  return rep;
}

}  // namespace levykit
