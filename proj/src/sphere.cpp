#include "levykit/sphere.hpp"

#include <cmath>

namespace levykit {
namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

SphereMeasure SphereMeasure::zero(int dim) {
  SphereMeasure m;
  m.dim_ = dim;
  return m;
}

SphereMeasure SphereMeasure::line(double weight_plus, double weight_minus) {
  if (weight_plus < 0.0 || weight_minus < 0.0)
    throw std::invalid_argument("SphereMeasure::line: weights must be nonnegative");
  SphereMeasure m;
  m.dim_ = 1;
  m.nodes_ = {{{1.0, 0.0}, weight_plus}, {{-1.0, 0.0}, weight_minus}};
  m.density_ = [weight_plus, weight_minus](const Vec2& w) {
    return w[0] > 0.0 ? weight_plus : weight_minus;
  };
  return m;
}

SphereMeasure SphereMeasure::circle_constant(double value, int nodes) {
  if (value < 0.0) throw std::invalid_argument("SphereMeasure::circle_constant: negative density");
  return circle_density([value](double) { return value; }, nodes);
}

SphereMeasure SphereMeasure::circle_density(std::function<double(double)> density_theta, int nodes) {
  if (nodes < 8) throw std::invalid_argument("SphereMeasure::circle_density: too few nodes");
  SphereMeasure m;
  m.dim_ = 2;
  m.nodes_.reserve(nodes);
  const double step = kTwoPi / nodes;
  for (int i = 0; i < nodes; ++i) {
    const double theta = i * step;
    const double d = density_theta(theta);
    if (d < 0.0) throw std::invalid_argument("SphereMeasure::circle_density: negative density");
    m.nodes_.push_back({{std::cos(theta), std::sin(theta)}, d * step});
  }
  m.density_ = [f = std::move(density_theta)](const Vec2& w) { return f(std::atan2(w[1], w[0])); };
  return m;
}

SphereMeasure SphereMeasure::circle_atoms(const std::vector<std::pair<double, double>>& theta_weight) {
  SphereMeasure m;
  m.dim_ = 2;
  for (const auto& [theta, weight] : theta_weight) {
    if (weight < 0.0) throw std::invalid_argument("SphereMeasure::circle_atoms: negative weight");
    m.nodes_.push_back({{std::cos(theta), std::sin(theta)}, weight});
  }
  return m;  // atoms carry no pointwise density
}

double SphereMeasure::total() const {
  double s = 0.0;
  for (const auto& n : nodes_) s += n.weight;
  return s;
}

Vec2 SphereMeasure::mean_direction() const {
  Vec2 v{0.0, 0.0};
  for (const auto& n : nodes_) {
    v[0] += n.weight * n.w[0];
    v[1] += n.weight * n.w[1];
  }
  return v;
}

double SphereMeasure::density_at(const Vec2& w) const {
  if (!density_) throw std::logic_error("SphereMeasure: atom measure has no pointwise density");
  return density_(w);
}

SphereMeasure SphereMeasure::symmetrized() const {
  SphereMeasure m;
  m.dim_ = dim_;
  m.nodes_.reserve(2 * nodes_.size());
  for (const auto& n : nodes_) {
    m.nodes_.push_back({n.w, 0.5 * n.weight});
    m.nodes_.push_back({{-n.w[0], -n.w[1]}, 0.5 * n.weight});
  }
  if (density_) {
    auto d = density_;
    m.density_ = [d](const Vec2& w) { return 0.5 * (d(w) + d(Vec2{-w[0], -w[1]})); };
  }
  return m;
}

SphereMeasure SphereMeasure::scaled(double factor) const {
  if (factor < 0.0) throw std::invalid_argument("SphereMeasure::scaled: negative factor");
  SphereMeasure m = *this;
  for (auto& n : m.nodes_) n.weight *= factor;
  if (density_) {
    auto d = density_;
    m.density_ = [d, factor](const Vec2& w) { return factor * d(w); };
  }
  return m;
}

}  // namespace levykit
