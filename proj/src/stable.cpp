#include "levykit/stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levykit {

namespace {

double radial_jump_rate(double alpha, double eps, const std::optional<double>& cutoff) {
  const double upper = cutoff ? std::pow(*cutoff, -alpha) : 0.0;
  return (std::pow(eps, -alpha) - upper) / alpha;
}

double max_measure_total(const StableModel& model) {
  double m = 0.0;
  for (double t : model.sample_times()) m = std::max(m, model.coeffs(t).measure.total());
  return m;
}

// drift + Gaussian covariance of everything except the retained jumps, over (s, t]
struct Correction {
  Vec2 drift{0.0, 0.0};
  Mat2 cov{{{0.0, 0.0}, {0.0, 0.0}}};
};

Correction accumulate_correction(const StableModel& model, double eps, double s, double t) {
  Correction out;
  const double alpha = model.alpha();
  for (const auto& [sample, weight] : model.quadrature_nodes(s, t)) {
    const ModelCoeffs c = model.coeffs(sample);
    if (alpha == 2.0) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.cov[i][j] += weight * c.diffusion[i][j];
      continue;
    }
    // small-jump second moment: sum_w q_w w w^T * eps^{2-alpha}/(2-alpha); the radial
    // jump density is r^{-1-alpha} dr with no extra constant (the symbol's C comes out
    // of that integral, it does not scale the measure)
    const double s2 = std::pow(eps, 2.0 - alpha) / (2.0 - alpha);
    for (const auto& node : c.measure.nodes())
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          out.cov[i][j] += weight * s2 * node.weight * node.w[i] * node.w[j];

    if (alpha > 1.0) {
      // compensator of the retained jumps (full compensation branch)
      const double upper = model.jump_cutoff() ? std::pow(*model.jump_cutoff(), 1.0 - alpha) : 0.0;
      const double r1 = (std::pow(eps, 1.0 - alpha) - upper) / (alpha - 1.0);
      Vec2 mean{0.0, 0.0};
      for (const auto& node : c.measure.nodes()) {
        mean[0] += node.weight * node.w[0];
        mean[1] += node.weight * node.w[1];
      }
      out.drift[0] -= weight * r1 * mean[0];
      out.drift[1] -= weight * r1 * mean[1];
    } else if (alpha == 1.0) {
      // the centering constraint zeroes the unit-ball compensator, leaving the drift term
      out.drift[0] += weight * c.drift[0];
      out.drift[1] += weight * c.drift[1];
    } else {
      // alpha < 1: nothing is compensated, so the dropped ball keeps its mean
      const double r0 = std::pow(eps, 1.0 - alpha) / (1.0 - alpha);
      Vec2 mean{0.0, 0.0};
      for (const auto& node : c.measure.nodes()) {
        mean[0] += node.weight * node.w[0];
        mean[1] += node.weight * node.w[1];
      }
      out.drift[0] += weight * r0 * mean[0];
      out.drift[1] += weight * r0 * mean[1];
    }
  }
  return out;
}

Vec2 gaussian_sample(const Mat2& cov, int dim, Rng& rng) {
  const double l11 = cov[0][0] > 0.0 ? std::sqrt(cov[0][0]) : 0.0;
  if (dim == 1) return {l11 * rng.normal(), 0.0};
  const double l21 = l11 > 0.0 ? cov[1][0] / l11 : 0.0;
  const double l22 = std::sqrt(std::max(0.0, cov[1][1] - l21 * l21));
  const double z1 = rng.normal(), z2 = rng.normal();
  return {l11 * z1, l21 * z1 + l22 * z2};
}

std::vector<double> cumulative_weights(const std::vector<SphereNode>& nodes) {
  std::vector<double> cum(nodes.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    acc += nodes[i].weight;
    cum[i] = acc;
  }
  return cum;
}

Vec2 draw_jump_from(const std::vector<SphereNode>& nodes, const std::vector<double>& cum,
                    double alpha, double eps, double upper, Rng& rng) {
  const double radius = rng.pareto(alpha, eps, upper);
  const Vec2 w = nodes[rng.categorical(cum)].w;
  return {radius * w[0], radius * w[1]};
}

Vec2 draw_jump(const StableModel& model, double eps, double time, Rng& rng) {
  const double upper =
      model.jump_cutoff() ? *model.jump_cutoff() : std::numeric_limits<double>::infinity();
  const ModelCoeffs c = model.coeffs(time);
  const auto cum = cumulative_weights(c.measure.nodes());
  return draw_jump_from(c.measure.nodes(), cum, model.alpha(), eps, upper, rng);
}

}  // namespace

double choose_small_jump_radius(const StableModel& model, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("choose_small_jump_radius: tolerance must be > 0");
  const double alpha = model.alpha();
  if (alpha == 2.0) return 0.0;
  const double r_ref = std::pow(model.symbol_scale() * model.horizon(), 1.0 / alpha);
  double eps;
  if (alpha > 1.0) {
    const double mass = max_measure_total(model) * model.horizon();
    eps = std::pow((3.0 - alpha) * tolerance * r_ref * r_ref * r_ref / mass, 1.0 / (3.0 - alpha));
  } else {
    eps = r_ref * std::pow(tolerance, 1.0 / (2.0 - alpha));
  }
  eps = std::min(eps, r_ref);
  if (model.jump_cutoff()) eps = std::min(eps, 0.5 * *model.jump_cutoff());
  return eps;
}

double expected_jump_count(const StableModel& model, double eps) {
  if (model.alpha() == 2.0) return 0.0;
  if (!(eps > 0.0)) throw std::invalid_argument("expected_jump_count: eps must be > 0");
  const double radial = radial_jump_rate(model.alpha(), eps, model.jump_cutoff());
  double mass = 0.0;
  for (const auto& [sample, weight] : model.quadrature_nodes(0.0, model.horizon()))
    mass += weight * model.coeffs(sample).measure.total();
  return mass * radial;
}

StablePathSampler::StablePathSampler(const StableModel& model, Rng& rng, StableSamplerOptions opts)
    : model_(&model) {
  const double alpha = model.alpha();
  if (alpha == 2.0) return;

  eps_ = opts.small_jump_radius ? *opts.small_jump_radius
                                : choose_small_jump_radius(model, opts.tolerance);
  if (model.jump_cutoff() && eps_ >= *model.jump_cutoff())
    throw std::invalid_argument("StablePathSampler: small-jump radius must lie below the cutoff");
  const double expected = expected_jump_count(model, eps_);
  if (expected > opts.max_expected_jumps)
    throw std::invalid_argument(
        "StablePathSampler: expected jump count exceeds the configured budget; raise the "
        "tolerance, shorten the horizon, or lower the jump cutoff");

  const double radial = radial_jump_rate(alpha, eps_, model.jump_cutoff());
  double rate_max = max_measure_total(model) * radial;
  if (model.time_kind() == TimeKind::smooth) rate_max *= 1.05;  // sampled max, keep headroom
  if (rate_max <= 0.0) return;

  const std::uint64_t candidates = rng.poisson(rate_max * model.horizon());
  std::vector<double> times(candidates);
  for (auto& t : times) t = model.horizon() * rng.uniform_pos();
  std::sort(times.begin(), times.end());
  jumps_.reserve(candidates);
  const bool homogeneous = model.time_homogeneous();
  if (homogeneous) {
    const ModelCoeffs c0 = model.coeffs(0.0);
    const auto cum = cumulative_weights(c0.measure.nodes());
    const double upper =
        model.jump_cutoff() ? *model.jump_cutoff() : std::numeric_limits<double>::infinity();
    for (double t : times)
      jumps_.push_back({t, draw_jump_from(c0.measure.nodes(), cum, alpha, eps_, upper, rng)});
  } else {
    for (double t : times) {
      const double rate = model.coeffs(t).measure.total() * radial;
      if (rng.uniform() * rate_max >= rate) continue;
      jumps_.push_back({t, draw_jump(model, eps_, t, rng)});
    }
  }
}

Vec2 StablePathSampler::increment(double s, double t, Rng& rng) const {
  if (!(0.0 <= s && s <= t && t <= model_->horizon() + 1e-12))
    throw std::invalid_argument("StablePathSampler::increment: need 0 <= s <= t <= horizon");
  Vec2 out{0.0, 0.0};
  auto lo = std::upper_bound(jumps_.begin(), jumps_.end(), s,
                             [](double v, const JumpEvent& e) { return v < e.time; });
  auto hi = std::upper_bound(jumps_.begin(), jumps_.end(), t,
                             [](double v, const JumpEvent& e) { return v < e.time; });
  for (auto it = lo; it != hi; ++it) {
    out[0] += it->displacement[0];
    out[1] += it->displacement[1];
  }
  const Correction corr = accumulate_correction(*model_, eps_, s, t);
  const Vec2 gauss = gaussian_sample(corr.cov, model_->dim(), rng);
  out[0] += corr.drift[0] + gauss[0];
  out[1] += corr.drift[1] + gauss[1];
  return out;
}

std::vector<Vec2> StablePathSampler::positions(const std::vector<double>& times, Rng& rng) const {
  std::vector<Vec2> out(times.size());
  Vec2 pos{0.0, 0.0};
  double prev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < prev)
      throw std::invalid_argument("StablePathSampler::positions: times must be nondecreasing");
    const Vec2 inc = increment(prev, times[i], rng);
    pos[0] += inc[0];
    pos[1] += inc[1];
    prev = times[i];
    out[i] = pos;
  }
  return out;
}

Vec2 stable_increment(const StableModel& model, double eps, double s, double t, Rng& rng) {
  if (!(0.0 <= s && s <= t && t <= model.horizon() + 1e-12))
    throw std::invalid_argument("stable_increment: need 0 <= s <= t <= horizon");
  Vec2 out{0.0, 0.0};
  if (model.alpha() < 2.0) {
    const double radial = radial_jump_rate(model.alpha(), eps, model.jump_cutoff());
    double rate_max = max_measure_total(model) * radial;
    if (model.time_kind() == TimeKind::smooth) rate_max *= 1.05;
    const bool homogeneous = model.time_homogeneous();
    const std::uint64_t candidates = rng.poisson(rate_max * (t - s));
    if (homogeneous && candidates > 0) {
      const ModelCoeffs c0 = model.coeffs(0.0);
      const auto cum = cumulative_weights(c0.measure.nodes());
      const double upper =
          model.jump_cutoff() ? *model.jump_cutoff() : std::numeric_limits<double>::infinity();
      for (std::uint64_t i = 0; i < candidates; ++i) {
        const Vec2 jump = draw_jump_from(c0.measure.nodes(), cum, model.alpha(), eps, upper, rng);
        out[0] += jump[0];
        out[1] += jump[1];
      }
    } else {
      for (std::uint64_t i = 0; i < candidates; ++i) {
        const double tau = s + (t - s) * rng.uniform_pos();
        const double rate = model.coeffs(tau).measure.total() * radial;
        if (rng.uniform() * rate_max >= rate) continue;
        const Vec2 jump = draw_jump(model, eps, tau, rng);
        out[0] += jump[0];
        out[1] += jump[1];
      }
    }
  }
  const Correction corr = accumulate_correction(model, eps, s, t);
  const Vec2 gauss = gaussian_sample(corr.cov, model.dim(), rng);
  out[0] += corr.drift[0] + gauss[0];
  out[1] += corr.drift[1] + gauss[1];
  return out;
}

}  // namespace levykit
