#include "levykit/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "levykit/kernel.hpp"

namespace levykit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_scenario(const FilterScenario& sc) {
  if (!(sc.dt > 0.0)) throw std::invalid_argument("filter: dt must be positive");
  if (!(sc.moment_box > 0.0))
    throw std::invalid_argument("filter: moment_box must be a positive half-width");
  if (!(sc.prior.stddev > 0.0)) throw std::invalid_argument("filter: prior stddev must be positive");
  const auto& obs = sc.observation;
  if (obs.mark_weights.empty()) throw std::invalid_argument("filter: need at least one mark");
  if (!(obs.rate_lower > 0.0 && obs.rate_upper >= obs.rate_lower))
    throw std::invalid_argument("filter: rate bounds must satisfy 0 < lower <= upper");
}

std::vector<double> substep_grid(double horizon, double dt,
                                 const std::vector<PRMEvent>& observations) {
  std::vector<double> times;
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-12));
  times.reserve(steps + observations.size() + 2);
  for (std::size_t i = 0; i <= steps; ++i) times.push_back(std::min(i * dt, horizon));
  for (const auto& e : observations)
    if (e.time <= horizon) times.push_back(e.time);
  times.push_back(horizon);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  if (times.front() != 0.0) times.insert(times.begin(), 0.0);
  return times;
}

SpectralField prior_field(const GaussianPrior& prior, const FrequencyGrid& grid) {
  const double s2 = prior.stddev * prior.stddev;
  const double norm = grid.dim == 1 ? 1.0 / std::sqrt(2.0 * kPi * s2) : 1.0 / (2.0 * kPi * s2);
  SpectralField f = SpectralField::from_point_values(grid, [&](const Vec2& x) {
    const double dx = x[0] - prior.center[0];
    const double dy = grid.dim == 2 ? x[1] - prior.center[1] : 0.0;
    return norm * std::exp(-0.5 * (dx * dx + dy * dy) / s2);
  });
  const double mass = f.mass();
  auto& phys = f.mutable_physical();
  for (double& v : phys) v /= mass;
  return f;
}

BoxMoments field_box_moments(SpectralField& density, const FrequencyGrid& grid, double limit) {
  const auto& phys = density.physical();
  double mass = 0.0, total = 0.0;
  Vec2 first{0.0, 0.0};
  for (std::size_t i = 0; i < phys.size(); ++i) {
    total += phys[i];
    const Vec2 x = grid.point(i);
    if (std::abs(x[0]) > limit || (grid.dim == 2 && std::abs(x[1]) > limit)) continue;
    mass += phys[i];
    first[0] += phys[i] * x[0];
    first[1] += phys[i] * x[1];
  }
  BoxMoments out;
  if (mass <= 0.0 || total <= 0.0) return out;
  out.mass = mass / total;
  out.mean = {first[0] / mass, first[1] / mass};
  double var = 0.0;
  for (std::size_t i = 0; i < phys.size(); ++i) {
    const Vec2 x = grid.point(i);
    if (std::abs(x[0]) > limit || (grid.dim == 2 && std::abs(x[1]) > limit)) continue;
    const double d0 = x[0] - out.mean[0];
    var += phys[i] * d0 * d0;
  }
  out.variance = var / mass;
  return out;
}

}  // namespace

void validate_observation(const ObservationModel& obs, const FrequencyGrid& grid) {
  if (!(obs.rate_lower > 0.0 && obs.rate_upper >= obs.rate_lower))
    throw std::invalid_argument("observation: rate bounds must satisfy 0 < lower <= upper");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec2 x = grid.point(i);
    for (std::size_t j = 0; j < obs.mark_weights.size(); ++j) {
      const double r = obs.rate(x, j);
      if (!(r >= obs.rate_lower && r <= obs.rate_upper))
        throw std::invalid_argument("observation: rate leaves its declared bounds on the grid");
    }
  }
}

SignalRealization simulate_scenario(const FilterScenario& sc, Rng& rng) {
  validate_scenario(sc);
  const double horizon = sc.signal.horizon();
  const auto& obs = sc.observation;
  double pi_total = 0.0;
  for (double w : obs.mark_weights) pi_total += w;

  // dominating rate for thinning
  const double envelope = obs.rate_upper * pi_total;
  const std::uint64_t candidates = rng.poisson(envelope * horizon);
  std::vector<double> cand_times(candidates);
  for (auto& t : cand_times) t = horizon * rng.uniform_pos();
  std::sort(cand_times.begin(), cand_times.end());

  // evaluate the signal exactly at substeps and candidate times in one sweep
  std::vector<double> eval_times = substep_grid(horizon, sc.dt, {});
  eval_times.insert(eval_times.end(), cand_times.begin(), cand_times.end());
  std::sort(eval_times.begin(), eval_times.end());
  eval_times.erase(std::unique(eval_times.begin(), eval_times.end()), eval_times.end());

  StablePathSampler sampler(sc.signal, rng);
  Vec2 start{sc.prior.center[0] + sc.prior.stddev * rng.normal(),
             sc.signal.dim() == 2 ? sc.prior.center[1] + sc.prior.stddev * rng.normal() : 0.0};
  std::vector<Vec2> path = sampler.positions(eval_times, rng);
  for (auto& x : path) {
    x[0] += start[0];
    x[1] += start[1];
  }

  std::vector<double> cum(obs.mark_weights.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < cum.size(); ++j) {
    acc += obs.mark_weights[j];
    cum[j] = acc;
  }

  SignalRealization out;
  std::size_t ei = 0;
  for (double tau : cand_times) {
    while (eval_times[ei] < tau) ++ei;
    const Vec2 x = path[ei];
    const std::size_t j = rng.categorical(cum);
    if (rng.uniform() * obs.rate_upper < obs.rate(x, j)) out.observations.push_back({tau, j});
  }

  // keep only the substep states in the realization
  const auto keep = substep_grid(horizon, sc.dt, {});
  out.times = keep;
  out.states.resize(keep.size());
  std::size_t pi = 0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    while (eval_times[pi] < keep[i]) ++pi;
    out.states[i] = path[pi];
  }
  return out;
}

ZakaiResult zakai_filter(const FilterScenario& sc, const std::vector<PRMEvent>& observations,
                         const FrequencyGrid& grid) {
  validate_scenario(sc);
  validate_observation(sc.observation, grid);
  if (!(sc.moment_box <= grid.box))
    throw std::invalid_argument("zakai_filter: moment box exceeds the grid half-width");
  if (!std::is_sorted(observations.begin(), observations.end(),
                      [](const PRMEvent& a, const PRMEvent& b) { return a.time < b.time; }))
    throw std::invalid_argument("zakai_filter: observations must be sorted");
  const double horizon = sc.signal.horizon();
  const std::size_t count = grid.size();
  const auto& obs = sc.observation;

  SpectralField v = prior_field(sc.prior, grid);

  // decay exponent lambda_rho(x) = sum_j (rate(x, j) - 1) Pi_j
  std::vector<double> decay(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const Vec2 x = grid.point(i);
    for (std::size_t j = 0; j < obs.mark_weights.size(); ++j)
      decay[i] += (obs.rate(x, j) - 1.0) * obs.mark_weights[j];
  }

  const bool homog = sc.signal.time_homogeneous();
  std::map<double, std::vector<std::complex<double>>> flow_cache;
  auto adjoint_flow = [&](double a, double b) -> const std::vector<std::complex<double>>& {
    const double delta = b - a;
    const double key = homog ? delta : a;  // time-dependent symbols get per-step entries
    auto it = flow_cache.find(key);
    if (it == flow_cache.end()) {
      auto mult = kernel_multiplier(sc.signal, a, b, 0.0, grid);
      for (auto& m : mult) m = std::conj(m);
      it = flow_cache.emplace(key, std::move(mult)).first;
    }
    return it->second;
  };

  double log_mass = 0.0;
  auto maybe_rescale = [&]() {
    const double m = v.mass();
    if (m > 1e8 || (m > 0.0 && m < 1e-8)) {
      log_mass += std::log(m);
      auto& phys = v.mutable_physical();
      for (double& x : phys) x /= m;
    }
  };

  const auto times = substep_grid(horizon, sc.dt, observations);
  std::size_t next_event = 0;
  while (next_event < observations.size() && observations[next_event].time <= 0.0) ++next_event;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double a = times[i], b = times[i + 1];
    const double half = 0.5 * (b - a);
    {
      auto& phys = v.mutable_physical();
      for (std::size_t k = 0; k < count; ++k) phys[k] *= std::exp(-half * decay[k]);
    }
    {
      const auto& flow = adjoint_flow(a, b);
      auto& spec = v.mutable_spectrum();
      for (std::size_t k = 0; k < count; ++k) spec[k] *= flow[k];
    }
    {
      auto& phys = v.mutable_physical();
      for (std::size_t k = 0; k < count; ++k) phys[k] *= std::exp(-half * decay[k]);
    }
    while (next_event < observations.size() && observations[next_event].time <= b) {
      const auto& e = observations[next_event];
      if (e.time == b) {
        auto& phys = v.mutable_physical();
        for (std::size_t k = 0; k < count; ++k) phys[k] *= obs.rate(grid.point(k), e.mark);
      }
      ++next_event;
    }
    maybe_rescale();
  }

  ZakaiResult out{std::move(v), log_mass, 0.0, {}};
  out.total_mass = std::exp(log_mass) * out.density.mass();
  out.moments = field_box_moments(out.density, grid, sc.moment_box);
  return out;
}

ParticleResult particle_filter(const FilterScenario& sc, const std::vector<PRMEvent>& observations,
                               std::size_t particles, Rng& rng) {
  validate_scenario(sc);
  if (particles < 2) throw std::invalid_argument("particle_filter: need at least 2 particles");
  if (!std::is_sorted(observations.begin(), observations.end(),
                      [](const PRMEvent& a, const PRMEvent& b) { return a.time < b.time; }))
    throw std::invalid_argument("particle_filter: observations must be sorted");
  const double horizon = sc.signal.horizon();
  const auto& obs = sc.observation;
  const int dim = sc.signal.dim();
  const double eps = sc.signal.alpha() < 2.0 ? choose_small_jump_radius(sc.signal) : 0.0;

  std::vector<Vec2> pos(particles);
  for (auto& x : pos) {
    x[0] = sc.prior.center[0] + sc.prior.stddev * rng.normal();
    x[1] = dim == 2 ? sc.prior.center[1] + sc.prior.stddev * rng.normal() : 0.0;
  }
  std::vector<double> logw(particles, 0.0);

  auto decay_at = [&](const Vec2& x) {
    double d = 0.0;
    for (std::size_t j = 0; j < obs.mark_weights.size(); ++j)
      d += (obs.rate(x, j) - 1.0) * obs.mark_weights[j];
    return d;
  };

  auto normalized = [&](std::vector<double>& out) {  // returns ESS
    const double peak = *std::max_element(logw.begin(), logw.end());
    double total = 0.0;
    out.resize(particles);
    for (std::size_t i = 0; i < particles; ++i) {
      out[i] = std::exp(logw[i] - peak);
      total += out[i];
    }
    double sq = 0.0;
    for (auto& w : out) {
      w /= total;
      sq += w * w;
    }
    return 1.0 / sq;
  };

  std::vector<double> prev_decay(particles);
  for (std::size_t i = 0; i < particles; ++i) prev_decay[i] = decay_at(pos[i]);

  const auto times = substep_grid(horizon, sc.dt, observations);
  std::size_t next_event = 0;
  while (next_event < observations.size() && observations[next_event].time <= 0.0) ++next_event;
  std::vector<double> weights;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double a = times[i], b = times[i + 1];
    for (std::size_t m = 0; m < particles; ++m) {
      const Vec2 inc = stable_increment(sc.signal, eps, a, b, rng);
      pos[m][0] += inc[0];
      pos[m][1] += inc[1];
      const double d = decay_at(pos[m]);
      logw[m] -= 0.5 * (b - a) * (prev_decay[m] + d);
      prev_decay[m] = d;
    }
    while (next_event < observations.size() && observations[next_event].time <= b) {
      const auto& e = observations[next_event];
      if (e.time == b)
        for (std::size_t m = 0; m < particles; ++m) logw[m] += std::log(obs.rate(pos[m], e.mark));
      ++next_event;
    }
    const double ess = normalized(weights);
    if (ess < 0.5 * static_cast<double>(particles) && i + 2 < times.size()) {
      // systematic resampling
      std::vector<Vec2> fresh(particles);
      std::vector<double> fresh_decay(particles);
      const double step = 1.0 / static_cast<double>(particles);
      double u = step * rng.uniform();
      double cum = weights[0];
      std::size_t src = 0;
      for (std::size_t m = 0; m < particles; ++m) {
        while (cum < u && src + 1 < particles) cum += weights[++src];
        fresh[m] = pos[src];
        fresh_decay[m] = prev_decay[src];
        u += step;
      }
      pos.swap(fresh);
      prev_decay.swap(fresh_decay);
      std::fill(logw.begin(), logw.end(), 0.0);
    }
  }

  const double ess = normalized(weights);
  const double limit = sc.moment_box;

  auto inside = [&](const Vec2& x) {
    return std::abs(x[0]) <= limit && (dim == 1 || std::abs(x[1]) <= limit);
  };
  double mass = 0.0;
  Vec2 first{0.0, 0.0};
  for (std::size_t m = 0; m < particles; ++m) {
    if (!inside(pos[m])) continue;
    mass += weights[m];
    first[0] += weights[m] * pos[m][0];
    first[1] += weights[m] * pos[m][1];
  }
  ParticleResult out;
  out.ess = ess;
  if (mass <= 0.0) return out;
  out.moments.mass = mass;
  out.moments.mean = {first[0] / mass, first[1] / mass};
  double var = 0.0;
  for (std::size_t m = 0; m < particles; ++m) {
    if (!inside(pos[m])) continue;
    const double d0 = pos[m][0] - out.moments.mean[0];
    var += weights[m] * d0 * d0;
  }
  out.moments.variance = var / mass;
  double se_mean = 0.0, se_var = 0.0;
  for (std::size_t m = 0; m < particles; ++m) {
    if (!inside(pos[m])) continue;
    const double w = weights[m] / mass;
    const double d0 = pos[m][0] - out.moments.mean[0];
    se_mean += w * w * d0 * d0;
    const double dv = d0 * d0 - out.moments.variance;
    se_var += w * w * dv * dv;
  }
  out.mean_stderr = std::sqrt(se_mean);
  out.variance_stderr = std::sqrt(se_var);
  return out;
}

}  // namespace levykit
