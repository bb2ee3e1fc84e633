#include "levykit/model.hpp"

#include <algorithm>

namespace levykit {

void StableModel::validate_coeffs(double alpha, int dim, const ModelCoeffs& c) {
  const bool has_measure = !c.measure.nodes().empty();
  const bool has_drift = c.drift[0] != 0.0 || c.drift[1] != 0.0;
  const auto& B = c.diffusion;
  const bool has_diffusion =
      B[0][0] != 0.0 || B[0][1] != 0.0 || B[1][0] != 0.0 || B[1][1] != 0.0;

  if (alpha == 2.0) {
    if (has_measure) throw std::invalid_argument("StableModel: alpha=2 takes no jump measure");
    if (has_drift) throw std::invalid_argument("StableModel: drift requires alpha=1");
    if (std::abs(B[0][1] - B[1][0]) > 1e-14)
      throw std::invalid_argument("StableModel: diffusion must be symmetric");
    const double tr = B[0][0] + B[1][1];
    const double det = B[0][0] * B[1][1] - B[0][1] * B[1][0];
    const bool psd = dim == 1 ? B[0][0] >= 0.0 : (tr >= 0.0 && det >= -1e-14);
    if (!psd) throw std::invalid_argument("StableModel: diffusion must be positive semidefinite");
    return;
  }
  if (has_diffusion) throw std::invalid_argument("StableModel: diffusion requires alpha=2");
  if (!has_measure) throw std::invalid_argument("StableModel: jump measure required for alpha<2");
  if (c.measure.dim() != dim) throw std::invalid_argument("StableModel: measure dimension mismatch");
  if (alpha != 1.0 && has_drift) throw std::invalid_argument("StableModel: drift requires alpha=1");
  if (alpha == 1.0) {
    const Vec2 mean = c.measure.mean_direction();
    const double tol = 1e-10 * std::max(1.0, c.measure.total());
    if (norm(mean) > tol)
      throw std::invalid_argument(
          "StableModel: alpha=1 jump measure must have zero mean direction "
          "(use SphereMeasure::symmetrized)");
  }
}

void StableModel::validate() const {
  if (!(alpha_ > 0.0) || alpha_ > 2.0)
    throw std::invalid_argument("StableModel: alpha must be in (0, 2]");
  if (dim_ != 1 && dim_ != 2) throw std::invalid_argument("StableModel: dim must be 1 or 2");
  if (!(horizon_ > 0.0)) throw std::invalid_argument("StableModel: horizon must be positive");
  if (cutoff_) {
    if (alpha_ == 2.0) throw std::invalid_argument("StableModel: jump cutoff is meaningless for alpha=2");
    if (!(*cutoff_ > 0.0)) throw std::invalid_argument("StableModel: jump cutoff must be positive");
    if (alpha_ == 1.0 && *cutoff_ < 1.0)
      throw std::invalid_argument("StableModel: alpha=1 jump cutoff must be >= 1");
  }
  for (double t : sample_times()) validate_coeffs(alpha_, dim_, coeffs(t));
}

StableModel StableModel::constant(double alpha, int dim, ModelCoeffs coeffs, double horizon,
                                  std::optional<double> jump_cutoff) {
  StableModel m;
  m.alpha_ = alpha;
  m.dim_ = dim;
  m.horizon_ = horizon;
  m.kind_ = TimeKind::constant;
  m.pieces_.push_back(std::move(coeffs));
  m.cutoff_ = jump_cutoff;
  m.validate();
  return m;
}

StableModel StableModel::piecewise(double alpha, int dim, std::vector<double> breaks,
                                   std::vector<ModelCoeffs> pieces, double horizon,
                                   std::optional<double> jump_cutoff) {
  if (pieces.size() != breaks.size() + 1)
    throw std::invalid_argument("StableModel: need breaks.size()+1 pieces");
  if (!std::is_sorted(breaks.begin(), breaks.end()))
    throw std::invalid_argument("StableModel: breaks must be sorted");
  if (!breaks.empty() && (breaks.front() <= 0.0 || breaks.back() >= horizon))
    throw std::invalid_argument("StableModel: breaks must lie inside (0, horizon)");
  StableModel m;
  m.alpha_ = alpha;
  m.dim_ = dim;
  m.horizon_ = horizon;
  m.kind_ = TimeKind::piecewise;
  m.breaks_ = std::move(breaks);
  m.pieces_ = std::move(pieces);
  m.cutoff_ = jump_cutoff;
  m.validate();
  return m;
}

StableModel StableModel::smooth(double alpha, int dim, std::function<ModelCoeffs(double)> coeffs,
                                double horizon, std::optional<double> jump_cutoff) {
  StableModel m;
  m.alpha_ = alpha;
  m.dim_ = dim;
  m.horizon_ = horizon;
  m.kind_ = TimeKind::smooth;
  m.coeffs_fn_ = std::move(coeffs);
  m.cutoff_ = jump_cutoff;
  m.validate();
  return m;
}

ModelCoeffs StableModel::coeffs(double t) const {
  switch (kind_) {
    case TimeKind::constant:
      return pieces_[0];
    case TimeKind::piecewise: {
      const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
      return pieces_[static_cast<std::size_t>(it - breaks_.begin())];
    }
    case TimeKind::smooth:
      return coeffs_fn_(t);
  }
  throw std::logic_error("StableModel: bad time kind");
}

std::vector<std::pair<double, double>> StableModel::quadrature_nodes(double s, double t,
                                                                     int smooth_substeps) const {
  if (t < s) throw std::invalid_argument("StableModel: reversed time interval");
  std::vector<std::pair<double, double>> nodes;
  if (t == s) return nodes;
  switch (kind_) {
    case TimeKind::constant:
      nodes.emplace_back(0.5 * (s + t), t - s);
      break;
    case TimeKind::piecewise: {
      double lo = s;
      for (double b : breaks_) {
        if (b <= s) continue;
        if (b >= t) break;
        nodes.emplace_back(0.5 * (lo + b), b - lo);
        lo = b;
      }
      nodes.emplace_back(0.5 * (lo + t), t - lo);
      break;
    }
    case TimeKind::smooth: {
      const int k = std::max(1, smooth_substeps);
      const double dt = (t - s) / k;
      for (int i = 0; i < k; ++i) nodes.emplace_back(s + (i + 0.5) * dt, dt);
      break;
    }
  }
  return nodes;
}

std::vector<double> StableModel::sample_times() const {
  switch (kind_) {
    case TimeKind::constant:
      return {0.5 * horizon_};
    case TimeKind::piecewise: {
      std::vector<double> ts;
      double lo = 0.0;
      for (std::size_t i = 0; i <= breaks_.size(); ++i) {
        const double hi = i < breaks_.size() ? breaks_[i] : horizon_;
        ts.push_back(0.5 * (lo + hi));
        lo = hi;
      }
      return ts;
    }
    case TimeKind::smooth: {
      std::vector<double> ts;
      for (int i = 0; i < 17; ++i) ts.push_back(horizon_ * (i + 0.5) / 17.0);
      return ts;
    }
  }
  throw std::logic_error("StableModel: bad time kind");
}

}  // namespace levykit
