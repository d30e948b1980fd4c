// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace muck {

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;  // y_i - fitted_i
  double max_abs_residual = 0.0;
};

/// Requires at least two points with distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Slope of the least-squares line together with its standard error under
/// independent per-point standard deviations `sigma` (propagated, not
/// estimated from residuals).
struct Trend {
  double slope = 0.0;
  double slope_std_error = 0.0;
  /// Rounding allowance, 1e-12 * max|y| / spread(x).
  double rounding = 0.0;

  /// No significant increase: slope <= 2 sigma_slope.
  bool nonincreasing() const noexcept {
    return slope <= 2.0 * slope_std_error + rounding;
  }
  /// Significant decrease: slope < -2 sigma_slope.
  bool decreasing() const noexcept {
    return slope < -(2.0 * slope_std_error + rounding);
  }
};

Trend trend(std::span<const double> x, std::span<const double> y,
            std::span<const double> sigma);

}  // namespace muck
