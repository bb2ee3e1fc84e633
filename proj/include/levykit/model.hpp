#pragma once
// Driving-process model: stability index alpha, spectral measure m(t, .), drift b(t)
// (alpha = 1 only), diffusion B(t) (alpha = 2 only), horizon T.
//
// Coefficients are constant, piecewise constant, or smooth in t. Time integrals of the
// symbol dispatch through quadrature_nodes(): exact per-piece weights for the first two
// kinds, composite midpoint for smooth coefficients.
//
// An optional jump cutoff truncates the jump measure at radius R (finite intensity,
// bounded jumps); symbol and samplers honor it consistently.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "levykit/sphere.hpp"

namespace levykit {

using Mat2 = std::array<std::array<double, 2>, 2>;

struct ModelCoeffs {
  SphereMeasure measure;
  Vec2 drift{0.0, 0.0};
  Mat2 diffusion{{{0.0, 0.0}, {0.0, 0.0}}};
};

enum class TimeKind { constant, piecewise, smooth };

class StableModel {
 public:
  static StableModel constant(double alpha, int dim, ModelCoeffs coeffs, double horizon,
                              std::optional<double> jump_cutoff = std::nullopt);
  // pieces[i] applies on [breaks[i-1], breaks[i]) with breaks[-1] = 0, breaks.back() < horizon
  static StableModel piecewise(double alpha, int dim, std::vector<double> breaks,
                               std::vector<ModelCoeffs> pieces, double horizon,
                               std::optional<double> jump_cutoff = std::nullopt);
  static StableModel smooth(double alpha, int dim, std::function<ModelCoeffs(double)> coeffs,
                            double horizon, std::optional<double> jump_cutoff = std::nullopt);

  double alpha() const { return alpha_; }
  int dim() const { return dim_; }
  double horizon() const { return horizon_; }
  TimeKind time_kind() const { return kind_; }
  bool time_homogeneous() const { return kind_ == TimeKind::constant; }
  const std::optional<double>& jump_cutoff() const { return cutoff_; }

  ModelCoeffs coeffs(double t) const;

  // (sample time, weight) pairs resolving int_s^t of a coefficient functional
  std::vector<std::pair<double, double>> quadrature_nodes(double s, double t,
                                                          int smooth_substeps = 8) const;
  // representative times for scans (diagnostics, calibration)
  std::vector<double> sample_times() const;

  bool calibrated() const { return !std::isnan(calibration_); }
  double calibration() const {
    if (!calibrated()) throw std::logic_error("StableModel: constant not calibrated yet");
    return calibration_;
  }
  // sup over sampled (t, direction) of Re M; the increment scale (symbol_scale * dt)^{1/alpha}
  double symbol_scale() const {
    if (std::isnan(symbol_scale_)) throw std::logic_error("StableModel: not calibrated yet");
    return symbol_scale_;
  }
  void set_calibration(double constant, double scale) {
    calibration_ = constant;
    symbol_scale_ = scale;
  }

 private:
  StableModel() = default;
  void validate() const;
  static void validate_coeffs(double alpha, int dim, const ModelCoeffs& c);

  double alpha_ = 0.0;
  int dim_ = 0;
  double horizon_ = 0.0;
  TimeKind kind_ = TimeKind::constant;
  std::vector<double> breaks_;
  std::vector<ModelCoeffs> pieces_;
  std::function<ModelCoeffs(double)> coeffs_fn_;
  std::optional<double> cutoff_;
  double calibration_ = std::nan("");
  double symbol_scale_ = std::nan("");
};

}  // namespace levykit
