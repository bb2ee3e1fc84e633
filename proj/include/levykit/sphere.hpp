#pragma once
// Spectral (angular) measure of the jump part, stored as a finite quadrature
// on the unit sphere: nodes w_i with lumped weights q_i ~ m(w_i) mu(dw_i).
//
// d=1: the sphere is the two-point set {-1,+1} with counting measure, so the
//      quadrature is exact. d=2: uniform trapezoid on the circle (spectrally
//      accurate for smooth densities) or an explicit atom list.

#include <functional>
#include <stdexcept>
#include <vector>

#include "levykit/grid.hpp"

namespace levykit {

struct SphereNode {
  Vec2 w;         // unit vector
  double weight;  // lumped m(w) mu(dw)
};

class SphereMeasure {
 public:
  SphereMeasure() = default;

  static SphereMeasure zero(int dim);
  static SphereMeasure line(double weight_plus, double weight_minus);
  static SphereMeasure circle_constant(double value, int nodes = 256);
  static SphereMeasure circle_density(std::function<double(double)> density_theta, int nodes = 256);
  static SphereMeasure circle_atoms(const std::vector<std::pair<double, double>>& theta_weight);

  int dim() const { return dim_; }
  const std::vector<SphereNode>& nodes() const { return nodes_; }
  double total() const;          // int m dmu
  Vec2 mean_direction() const;   // int w m dmu (must vanish for alpha = 1)

  bool has_density() const { return static_cast<bool>(density_); }
  // density w.r.t. the sphere measure at a unit vector (throws without one)
  double density_at(const Vec2& w) const;

  SphereMeasure symmetrized() const;  // even part: kills the mean direction
  SphereMeasure scaled(double factor) const;

 private:
  int dim_ = 0;
  std::vector<SphereNode> nodes_;
  std::function<double(const Vec2&)> density_;
};

}  // namespace levykit
