#pragma once

#include <optional>
#include <vector>

#include "walkoff/grid.hpp"

namespace walkoff {

enum class Axis { signal, idler };

/// Probability density on the grid axis, normalized so sum(p) * step = 1.
struct AngularDistribution {
  std::vector<double> theta;
  std::vector<double> p;
  double step = 0.0;
  std::optional<double> theta_fixed;  // set for conditional distributions

  bool conditional() const { return theta_fixed.has_value(); }
  double mean() const;
  double stddev() const;
  /// Third standardized moment.
  double skewness() const;
  /// Location of the maximum, refined by a parabola through the top three samples.
  double peak() const;
};

/// p(theta_s | theta_i = fixed) from |F|^2, linearly interpolated between idler columns.
AngularDistribution conditional_distribution(const TPAGrid& grid, double theta_i_fixed);

/// Marginal of |F|^2 over the partner angle (trapezoid weights).
AngularDistribution unconditional_distribution(const TPAGrid& grid, Axis axis);

struct AsymmetryReport {
  double swap_asym = 0.0;           // ||F| - |F|^T|_2 / ||F||_2 (Frobenius)
  double marginal_skewness = 0.0;   // of the signal marginal
  double conditioning_angle = 0.0;  // rms width of the signal marginal
  double bend_offset = 0.0;         // conditional peak at theta_i = conditioning_angle, minus it
};

AsymmetryReport asymmetry_report(const TPAGrid& grid);

}  // namespace walkoff
