// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "muck/density.hpp"
#include "muck/integrate.hpp"
#include "muck/point.hpp"

namespace muck {

/// Bounds on lambda(x, v, R) for rho = |y - x0|^{-alpha}, 0 < alpha < 1,
/// valid for every direction v when R > |x - x0|:
///   lower = [(r + R)^{1-a} - r^{1-a}] / (1-a)
///   upper = r^{1-a}/(1-a) + (R - r)^{1-a}/(1-a),   r = |x - x0|.
struct LineBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Throws Errc::OutsideRegime when R <= |x - x0|, Errc::InvalidArgument
/// unless 0 < alpha < 1.
LineBounds lemma_bounds(const Point& x, const Point& x0, double alpha,
                        double R);

struct LineMassResult {
  Point x;
  Point v;
  double R = 0.0;
  MassEstimate lambda;
  std::optional<LineBounds> bounds;
};

/// line_mass plus the closed-form bounds when the density is a radial
/// power with exponent in (-1, 0) and R > |x - x0|.
LineMassResult line_mass_with_bounds(const Density& d, const Point& x,
                                     const Point& v, double R,
                                     const LineMassOptions& opts = {});

struct Ray {
  Point origin;
  Point direction;  // unit
};

enum class IsotropyVerdict { Isotropic, NotIsotropic, Inconclusive };
std::string_view to_string(IsotropyVerdict v) noexcept;

inline constexpr double kIsotropyTol = 0.05;

struct IsotropyPoint {
  double radius = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double ratio = 1.0;
  /// [lower1/upper2, upper1/lower2] when both rays admit lemma bounds.
  std::optional<double> bracket_low;
  std::optional<double> bracket_high;
};

struct IsotropyCurve {
  Ray ray1;
  Ray ray2;
  std::vector<IsotropyPoint> points;
  IsotropyVerdict verdict = IsotropyVerdict::Inconclusive;
};

/// R_k = scale * 10^k, k = 1..4, with scale = max(1, |x_i - x0|) for radial
/// powers and max(1, |x_i|) otherwise.
std::vector<double> default_isotropy_schedule(const Density& d, const Ray& r1,
                                              const Ray& r2);

/// Isotropic iff |ratio - 1| <= tol at the largest radius and the deviation
/// does not grow with R; NotIsotropic iff it exceeds tol there and does not
/// shrink.
IsotropyCurve isotropy_ratio_curve(const Density& d, const Ray& r1,
                                   const Ray& r2,
                                   const std::vector<double>& radii,
                                   const LineMassOptions& opts = {},
                                   double tol = kIsotropyTol);

}  // namespace muck
