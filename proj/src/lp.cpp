#include "levykit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levykit {

double LPFamily::bump(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - u * u));
}

double LPFamily::annulus_profile(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double u0 = u - std::floor(u);
  const double d = bump(u0) + bump(u0 - 1.0);  // 1-periodic level sum, strictly positive
  return bump(u) / d;
}

double LPFamily::band_value(const Vec2& xi, int j) const {
  const double r = norm(xi);
  if (r <= 0.0) return 0.0;
  return annulus_profile(std::log2(r) - j);
}

double LPFamily::low_pass_value(const Vec2& xi) const {
  const double r = norm(xi);
  if (r <= 1.0) return 1.0;
  const double u = std::log2(r);
  const long k0 = static_cast<long>(std::floor(u));
  double s = 0.0;
  for (long k = std::max(1L, k0); k <= k0 + 1; ++k) s += annulus_profile(u - k);
  return 1.0 - s;
}

LPFamily::LPFamily(const FrequencyGrid& grid, int j_max) : grid_(grid) {
  const double cap = grid.nyquist() / 2.0;
  const int admissible = static_cast<int>(std::floor(std::log2(cap) + 1e-12));
  if (admissible < 1)
    throw std::invalid_argument("LPFamily: grid too coarse for a dyadic decomposition");
  if (j_max < 0) {
    j_max_ = admissible;
  } else {
    if (j_max < 1 || j_max > admissible)
      throw std::invalid_argument("LPFamily: j_max must satisfy 1 <= j_max and 2^j_max <= nyquist/2");
    j_max_ = j_max;
  }

  const std::size_t count = grid_.size();
  bands_.assign(static_cast<std::size_t>(j_max_) + 2, std::vector<double>(count));
  low_.assign(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const Vec2 xi = grid_.frequency(k);
    low_[k] = low_pass_value(xi);
    for (int j = 0; j <= j_max_ + 1; ++j) bands_[static_cast<std::size_t>(j)][k] = band_value(xi, j);
  }

  mollifiers_.assign(static_cast<std::size_t>(j_max_) + 1, std::vector<double>(count));
  for (std::size_t k = 0; k < count; ++k)
    mollifiers_[0][k] = low_[k] + bands_[1][k];
  for (int j = 1; j <= j_max_; ++j) {
    auto& m = mollifiers_[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < count; ++k)
      m[k] = bands_[static_cast<std::size_t>(j - 1)][k] + bands_[static_cast<std::size_t>(j)][k] +
             bands_[static_cast<std::size_t>(j + 1)][k];
  }
}

const std::vector<double>& LPFamily::block_multiplier(int j) const {
  if (j < 0 || j > j_max_) throw std::out_of_range("LPFamily::block_multiplier: level out of range");
  return j == 0 ? low_ : bands_[static_cast<std::size_t>(j)];
}

const std::vector<double>& LPFamily::mollifier(int j) const {
  if (j < 0 || j > j_max_) throw std::out_of_range("LPFamily::mollifier: level out of range");
  return mollifiers_[static_cast<std::size_t>(j)];
}

void apply_real_multiplier(SpectralField& u, const std::vector<double>& values_on_lattice) {
  auto& spec = u.mutable_spectrum();
  if (spec.size() != values_on_lattice.size())
    throw std::invalid_argument("apply_real_multiplier: size mismatch");
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= values_on_lattice[k];
}

SpectralField block(SpectralField& u, const LPFamily& family, int j) {
  u.spectrum();  // sync before copying so the copy carries the spectrum
  SpectralField out = u;
  apply_real_multiplier(out, family.block_multiplier(j));
  return out;
}

void fractional_derivative_inplace(SpectralField& u, double order) {
  if (order == 0.0) return;
  if (order < 0.0) throw std::invalid_argument("fractional_derivative: order must be >= 0");
  const FrequencyGrid grid = u.grid();
  auto& spec = u.mutable_spectrum();
  const bool quadratic = order == 2.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const Vec2 xi = grid.frequency(k);
    const double r2 = dot(xi, xi);
    const double mult = quadratic ? r2 : (r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * order));
    spec[k] *= mult;
  }
}

SpectralField fractional_derivative(SpectralField& u, double order) {
  u.spectrum();
  SpectralField out = u;
  fractional_derivative_inplace(out, order);
  return out;
}

SpectralField mollify_sequence(SpectralField& u, const LPFamily& family, int n) {
  if (n < 0 || n > family.max_level())
    throw std::out_of_range("mollify_sequence: level out of range");
  std::vector<double> mult = family.block_multiplier(0);
  for (int j = 1; j <= n; ++j) {
    const auto& band = family.block_multiplier(j);
    for (std::size_t k = 0; k < mult.size(); ++k) mult[k] += band[k];
  }
  u.spectrum();
  SpectralField out = u;
  apply_real_multiplier(out, mult);
  return out;
}

HolderNormEstimator::HolderNormEstimator(const LPFamily& family, double alpha, double beta,
                                         double p, std::size_t snapshots)
    : family_(&family),
      grid_(family.grid()),
      alpha_(alpha),
      beta_(beta),
      p_(p),
      snapshots_(snapshots) {
  if (!(p > 0.0)) throw std::invalid_argument("HolderNormEstimator: p must be positive");
  if (!(beta >= 0.0)) throw std::invalid_argument("HolderNormEstimator: beta must be >= 0");
  if (snapshots == 0) throw std::invalid_argument("HolderNormEstimator: need at least one snapshot");
  for (std::size_t s = 1; s <= static_cast<std::size_t>(grid_.n) / 4; s *= 2) shifts_.push_back(s);

  const std::size_t cells = snapshots_ * grid_.size();
  auto blank = [cells]() { return Stat{std::vector<double>(cells, 0.0), std::vector<double>(cells, 0.0)}; };
  plain_ = blank();
  deriv_ = blank();
  shifted_.assign(static_cast<std::size_t>(grid_.dim) * shifts_.size(), blank());
  bands_.assign(static_cast<std::size_t>(family.max_level()) + 1, blank());
}

void HolderNormEstimator::accumulate(Stat& s, std::size_t idx, double value) {
  double vp;
  if (p_ == 2.0) {
    vp = value * value;
  } else if (p_ == 4.0) {
    const double v2 = value * value;
    vp = v2 * v2;
  } else {
    vp = std::pow(value, p_);
  }
  s.sum_p[idx] += vp;
  s.sum_2p[idx] += vp * vp;
}

ComponentSet HolderNormEstimator::components(SpectralField& snapshot) const {
  if (!(snapshot.grid() == grid_))
    throw std::invalid_argument("HolderNormEstimator: snapshot grid mismatch");
  const std::size_t count = grid_.size();
  const int n = grid_.n;
  ComponentSet cs;

  snapshot.spectrum();  // one forward transform, shared by the copies below
  const auto& phys = snapshot.physical();
  cs.plain.resize(count);
  for (std::size_t i = 0; i < count; ++i) cs.plain[i] = std::abs(phys[i]);

  SpectralField d = snapshot;
  fractional_derivative_inplace(d, alpha_);
  const auto& dphys = d.physical();
  cs.deriv.resize(count);
  for (std::size_t i = 0; i < count; ++i) cs.deriv[i] = std::abs(dphys[i]);

  cs.diffs.assign(static_cast<std::size_t>(grid_.dim) * shifts_.size(), std::vector<double>(count));
  for (int axis = 0; axis < grid_.dim; ++axis) {
    for (std::size_t si = 0; si < shifts_.size(); ++si) {
      const int s = static_cast<int>(shifts_[si]);
      auto& diff = cs.diffs[static_cast<std::size_t>(axis) * shifts_.size() + si];
      if (grid_.dim == 1) {
        for (int i = 0; i < n; ++i) {
          const int j = (i + s) % n;
          diff[static_cast<std::size_t>(i)] =
              std::abs(dphys[static_cast<std::size_t>(j)] - dphys[static_cast<std::size_t>(i)]);
        }
      } else {
        for (int i0 = 0; i0 < n; ++i0) {
          for (int i1 = 0; i1 < n; ++i1) {
            const int j0 = axis == 0 ? (i0 + s) % n : i0;
            const int j1 = axis == 1 ? (i1 + s) % n : i1;
            diff[grid_.flat(i0, i1)] = std::abs(dphys[grid_.flat(j0, j1)] - dphys[grid_.flat(i0, i1)]);
          }
        }
      }
    }
  }

  cs.bands.resize(static_cast<std::size_t>(family_->max_level()) + 1);
  for (int j = 0; j <= family_->max_level(); ++j) {
    SpectralField b = block(snapshot, *family_, j);
    const auto& bphys = b.physical();
    auto& out = cs.bands[static_cast<std::size_t>(j)];
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::abs(bphys[i]);
  }
  return cs;
}

void HolderNormEstimator::add_path(std::span<SpectralField> snapshots) {
  if (snapshots.size() != snapshots_)
    throw std::invalid_argument("HolderNormEstimator: snapshot count mismatch");
  std::vector<ComponentSet> comps;
  comps.reserve(snapshots.size());
  for (auto& snap : snapshots) comps.push_back(components(snap));
  add_component_path(comps);
}

void HolderNormEstimator::add_component_path(std::span<const ComponentSet> components_per_snapshot) {
  if (components_per_snapshot.size() != snapshots_)
    throw std::invalid_argument("HolderNormEstimator: snapshot count mismatch");
  const std::size_t count = grid_.size();
  for (std::size_t t = 0; t < snapshots_; ++t) {
    const ComponentSet& cs = components_per_snapshot[t];
    const std::size_t base = t * count;
    for (std::size_t i = 0; i < count; ++i) accumulate(plain_, base + i, cs.plain[i]);
    for (std::size_t i = 0; i < count; ++i) accumulate(deriv_, base + i, cs.deriv[i]);
    for (std::size_t k = 0; k < shifted_.size(); ++k)
      for (std::size_t i = 0; i < count; ++i) accumulate(shifted_[k], base + i, cs.diffs[k][i]);
    for (std::size_t j = 0; j < bands_.size(); ++j)
      for (std::size_t i = 0; i < count; ++i) accumulate(bands_[j], base + i, cs.bands[j][i]);
  }
  ++paths_;
}

void HolderNormEstimator::merge(const HolderNormEstimator& other) {
  if (other.snapshots_ != snapshots_ || !(other.grid_ == grid_) || other.shifted_.size() != shifted_.size() ||
      other.bands_.size() != bands_.size())
    throw std::invalid_argument("HolderNormEstimator::merge: incompatible estimators");
  auto add = [](Stat& a, const Stat& b) {
    for (std::size_t i = 0; i < a.sum_p.size(); ++i) {
      a.sum_p[i] += b.sum_p[i];
      a.sum_2p[i] += b.sum_2p[i];
    }
  };
  add(plain_, other.plain_);
  add(deriv_, other.deriv_);
  for (std::size_t k = 0; k < shifted_.size(); ++k) add(shifted_[k], other.shifted_[k]);
  for (std::size_t j = 0; j < bands_.size(); ++j) add(bands_[j], other.bands_[j]);
  paths_ += other.paths_;
}

HolderNormEstimator::Peak HolderNormEstimator::peak(const Stat& s) const {
  const double m = static_cast<double>(paths_);
  Peak best;
  double best_mp = -1.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < s.sum_p.size(); ++i) {
    if (s.sum_p[i] > best_mp) {
      best_mp = s.sum_p[i];
      best_idx = i;
    }
  }
  const double mean_p = s.sum_p[best_idx] / m;
  const double root = p_ == 2.0 ? std::sqrt(mean_p) : std::pow(mean_p, 1.0 / p_);
  best.value = root;
  const double var_mean = std::max(0.0, s.sum_2p[best_idx] / m - mean_p * mean_p) / m;
  if (mean_p > 0.0 && paths_ > 1)
    best.stderr_at_peak = std::pow(mean_p, 1.0 / p_ - 1.0) / p_ * std::sqrt(var_mean);
  return best;
}

NormReport HolderNormEstimator::finalize() const {
  if (paths_ == 0) throw std::logic_error("HolderNormEstimator: no paths accumulated");
  NormReport rep;
  rep.alpha = alpha_;
  rep.beta = beta_;
  rep.p = p_;
  rep.paths = paths_;

  const Peak plain = peak(plain_);
  const Peak deriv = peak(deriv_);
  rep.sup_part = plain.value;
  rep.deriv_part = deriv.value;

  Peak holder;
  const double h = grid_.spacing();
  for (std::size_t k = 0; k < shifted_.size(); ++k) {
    const double len = h * static_cast<double>(shifts_[k % shifts_.size()]);
    const double scale = beta_ == 0.0 ? 1.0 : std::pow(len, -beta_);
    Peak pk = peak(shifted_[k]);
    pk.value *= scale;
    pk.stderr_at_peak *= scale;
    if (pk.value > holder.value) holder = pk;
  }
  rep.holder_part = holder.value;
  rep.classic = rep.sup_part + rep.deriv_part + rep.holder_part;
  rep.mc_stderr = plain.stderr_at_peak + deriv.stderr_at_peak + holder.stderr_at_peak;

  double band_sup = 0.0;
  for (std::size_t j = 1; j < bands_.size(); ++j) {
    const double weight = std::exp2((alpha_ + beta_) * static_cast<double>(j));
    band_sup = std::max(band_sup, weight * peak(bands_[j]).value);
  }
  rep.lp_equiv = peak(bands_[0]).value + band_sup;
  return rep;
}

NormReport holder_norm(std::span<SpectralField> snapshots, const LPFamily& family, double alpha,
                       double beta, double p) {
  HolderNormEstimator est(family, alpha, beta, p, snapshots.size());
  est.add_path(snapshots);
  return est.finalize();
}

MarkNormEstimator::MarkNormEstimator(const LPFamily& family, double alpha, double beta, double r,
                                     double p, std::size_t snapshots, std::vector<double> mark_weights)
    : inner_(family, alpha, beta, p, snapshots), r_(r), weights_(std::move(mark_weights)) {
  if (!(r > 0.0)) throw std::invalid_argument("MarkNormEstimator: r must be positive");
  if (weights_.empty()) throw std::invalid_argument("MarkNormEstimator: need at least one mark");
  for (double w : weights_)
    if (!(w >= 0.0)) throw std::invalid_argument("MarkNormEstimator: weights must be >= 0");
}

namespace {

// out := (out^r accumulated): caller passes the running weighted sum of |c|^r
void r_power_add(std::vector<double>& acc, const std::vector<double>& c, double w, double r) {
  if (r == 2.0) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * c[i] * c[i];
  } else {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * std::pow(c[i], r);
  }
}

void r_root(std::vector<double>& acc, double r) {
  if (r == 2.0) {
    for (double& v : acc) v = std::sqrt(v);
  } else {
    for (double& v : acc) v = std::pow(v, 1.0 / r);
  }
}

}  // namespace

void MarkNormEstimator::add_path(std::span<std::vector<SpectralField>> series_per_mark) {
  if (series_per_mark.size() != weights_.size())
    throw std::invalid_argument("MarkNormEstimator: mark count mismatch");
  const std::size_t snapshots = series_per_mark.empty() ? 0 : series_per_mark[0].size();
  for (const auto& series : series_per_mark)
    if (series.size() != snapshots)
      throw std::invalid_argument("MarkNormEstimator: ragged snapshot series");

  std::vector<ComponentSet> combined(snapshots);
  for (std::size_t t = 0; t < snapshots; ++t) {
    ComponentSet& out = combined[t];
    bool first = true;
    for (std::size_t v = 0; v < series_per_mark.size(); ++v) {
      ComponentSet cs = inner_.components(series_per_mark[v][t]);
      const double w = weights_[v];
      if (first) {
        out.plain.assign(cs.plain.size(), 0.0);
        out.deriv.assign(cs.deriv.size(), 0.0);
        out.diffs.assign(cs.diffs.size(), std::vector<double>(cs.plain.size(), 0.0));
        out.bands.assign(cs.bands.size(), std::vector<double>(cs.plain.size(), 0.0));
        first = false;
      }
      r_power_add(out.plain, cs.plain, w, r_);
      r_power_add(out.deriv, cs.deriv, w, r_);
      for (std::size_t k = 0; k < cs.diffs.size(); ++k) r_power_add(out.diffs[k], cs.diffs[k], w, r_);
      for (std::size_t j = 0; j < cs.bands.size(); ++j) r_power_add(out.bands[j], cs.bands[j], w, r_);
    }
    r_root(out.plain, r_);
    r_root(out.deriv, r_);
    for (auto& d : out.diffs) r_root(d, r_);
    for (auto& b : out.bands) r_root(b, r_);
  }
  inner_.add_component_path(combined);
}

void MarkNormEstimator::merge(const MarkNormEstimator& other) { inner_.merge(other.inner_); }

NormReport MarkNormEstimator::finalize() const {
  NormReport rep = inner_.finalize();
  rep.r = r_;
  return rep;
}

NormReport holder_norm_rp(std::span<std::vector<SpectralField>> series_per_mark,
                          const LPFamily& family, double alpha, double beta, double r, double p,
                          const std::vector<double>& mark_weights) {
  const std::size_t snapshots = series_per_mark.empty() ? 0 : series_per_mark[0].size();
  MarkNormEstimator est(family, alpha, beta, r, p, snapshots, mark_weights);
  est.add_path(series_per_mark);
  return est.finalize();
}

}  // namespace levykit
