// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "muck/ap.hpp"
#include "muck/density.hpp"
#include "muck/point.hpp"

namespace muck {

enum class HomogeneityVerdict { Homogeneous, NotHomogeneous, Inconclusive };
std::string_view to_string(HomogeneityVerdict v) noexcept;

/// Tolerance on |M1/M2 - 1| at the largest radii.
inline constexpr double kHomogeneityTol = 0.02;

struct RatioPoint {
  double radius = 0.0;
  double ratio = 1.0;
  double std_error = 0.0;
  MassEstimate mass1;
  MassEstimate mass2;
};

/// M1(R) / M2(R) for two observers over a radius schedule.
struct RatioCurve {
  Point x1;
  Point x2;
  std::vector<RatioPoint> points;
  /// Filled by attach_envelope once an envelope has been fitted.
  std::vector<double> envelope;
  HomogeneityVerdict verdict = HomogeneityVerdict::Inconclusive;

  std::size_t dim() const noexcept { return x1.dim(); }
  double distance() const noexcept { return muck::distance(x1, x2); }
};

/// R_j = 4 |x1 - x2| 2^j for j = 0..count-1.
std::vector<double> default_schedule(const Point& x1, const Point& x2,
                                     std::size_t count = 8);

/// Both masses at each radius come from one seed (common random numbers);
/// the ratio's standard error includes their covariance.
/// Requires radii strictly increasing with radii[0] > 2 |x1 - x2|.
RatioCurve ratio_curve(const Density& d, const Point& x1, const Point& x2,
                       const std::vector<double>& radii,
                       const SamplingBudget& budget);

/// Homogeneous iff |ratio - 1| <= max(tol, 3 sigma) at the last three radii
/// and |ratio - 1| shows no significant upward trend in log R;
/// NotHomogeneous iff the last three deviations all exceed max(tol, 10 sigma)
/// with no significant downward trend.
HomogeneityVerdict classify(const RatioCurve& curve,
                            double tol = kHomogeneityTol);

/// K [1 - (1 - dist/R)^n]^gamma. Requires R > dist > 0, K > 0, gamma > 0.
double envelope(std::size_t n, double dist, double R, double K, double gamma);

struct EnvelopeFit {
  bool conclusive = false;
  std::size_t signal_points = 0;  // points with |ratio - 1| > 3 sigma
  double gamma = 0.0;
  double K_fit = 0.0;     // least-squares constant
  double K = 0.0;         // smallest K bounding every signal point at gamma
  double max_residual = 0.0;  // largest |log residual| of the fit
  bool bound_holds = false;   // every point <= K env + 3 sigma
};

/// Fits log|ratio - 1| = log K + gamma log[1 - (1 - d/R)^n] over the points
/// whose deviation exceeds 3 sigma; needs at least four of them. With fewer
/// the envelope cannot be falsified and the fit is inconclusive; the bound
/// check then reports whether every point is within 3 sigma of 1.
EnvelopeFit fit_envelope(const RatioCurve& curve);

/// Fills curve.envelope from a conclusive fit.
void attach_envelope(RatioCurve& curve, const EnvelopeFit& fit);

}  // namespace muck
