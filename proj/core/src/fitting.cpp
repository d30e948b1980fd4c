// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/fitting.hpp"

#include <algorithm>
#include <cmath>

#include "muck/error.hpp"

namespace muck {

namespace {

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(Errc::InvalidArgument, "fit_line: need at least two (x, y) pairs");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0)
    throw Error(Errc::InvalidArgument, "fit_line: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.residuals.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(fit.residuals[i]));
  }
  return fit;
}

Trend trend(std::span<const double> x, std::span<const double> y,
            std::span<const double> sigma) {
  if (x.size() != y.size() || x.size() != sigma.size() || x.size() < 2)
    throw Error(Errc::InvalidArgument, "trend: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  double var = 0.0;
  double y_max = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    y_max = std::max(y_max, std::abs(y[i]));
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
    var += dx * dx * sigma[i] * sigma[i];
  }
  if (sxx == 0.0)
    throw Error(Errc::InvalidArgument, "trend: x values are all equal");
  Trend t;
  t.slope = sxy / sxx;
  t.slope_std_error = std::sqrt(var) / sxx;
  t.rounding = 1e-12 * y_max / std::sqrt(sxx);
  return t;
}

}  // namespace muck
