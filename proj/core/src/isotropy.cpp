// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/isotropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "muck/error.hpp"
#include "muck/fitting.hpp"

namespace muck {

std::string_view to_string(IsotropyVerdict v) noexcept {
  switch (v) {
    case IsotropyVerdict::Isotropic: return "Isotropic";
    case IsotropyVerdict::NotIsotropic: return "NotIsotropic";
    case IsotropyVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

LineBounds lemma_bounds(const Point& x, const Point& x0, double alpha,
                        double R) {
  require_same_dim(x, x0, "lemma_bounds");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw Error(Errc::InvalidArgument, "lemma_bounds: alpha must lie in (0, 1)");
  const double r = distance(x, x0);
  if (!(R > r)) {
    throw Error(Errc::OutsideRegime,
                "lemma_bounds: outside lemma regime (R=" + std::to_string(R) +
                    " <= |x - x0|=" + std::to_string(r) + ")");
  }
  const double e = 1.0 - alpha;
  LineBounds b;
  b.lower = (std::pow(r + R, e) - std::pow(r, e)) / e;
  b.upper = (std::pow(r, e) + std::pow(R - r, e)) / e;
  return b;
}

namespace {

// Bounds apply to |y - x0|^{-alpha} with alpha in (0, 1) and R > |x - x0|.
std::optional<LineBounds> bounds_if_applicable(const Density& d, const Point& x,
                                               double R) {
  const auto* rp = d.as<RadialPowerDensity>();
  if (rp == nullptr) return std::nullopt;
  const double alpha = -rp->beta;
  if (!(alpha > 0.0 && alpha < 1.0)) return std::nullopt;
  if (!(R > distance(x, rp->center))) return std::nullopt;
  return lemma_bounds(x, rp->center, alpha, R);
}

void check_ray(const Density& d, const Ray& r) {
  if (r.origin.dim() != d.dim() || r.direction.dim() != d.dim())
    throw Error(Errc::DimensionMismatch, "isotropy: ray and density dimensions differ");
  if (std::abs(r.direction.norm() - 1.0) > 1e-12)
    throw Error(Errc::InvalidArgument, "isotropy: ray direction must be a unit vector");
}

}  // namespace

LineMassResult line_mass_with_bounds(const Density& d, const Point& x,
                                     const Point& v, double R,
                                     const LineMassOptions& opts) {
  LineMassResult res;
  res.x = x;
  res.v = v;
  res.R = R;
  res.lambda = line_mass(d, x, v, R, opts);
  res.bounds = bounds_if_applicable(d, x, R);
  return res;
}

std::vector<double> default_isotropy_schedule(const Density& d, const Ray& r1,
                                              const Ray& r2) {
  check_ray(d, r1);
  check_ray(d, r2);
  double scale = 1.0;
  if (const auto* rp = d.as<RadialPowerDensity>()) {
    scale = std::max({scale, distance(r1.origin, rp->center),
                      distance(r2.origin, rp->center)});
  } else {
    scale = std::max({scale, r1.origin.norm(), r2.origin.norm()});
  }
  std::vector<double> radii;
  for (int k = 1; k <= 4; ++k) radii.push_back(scale * std::pow(10.0, k));
  return radii;
}

IsotropyCurve isotropy_ratio_curve(const Density& d, const Ray& r1,
                                   const Ray& r2,
                                   const std::vector<double>& radii,
                                   const LineMassOptions& opts, double tol) {
  check_ray(d, r1);
  check_ray(d, r2);
  if (radii.empty())
    throw Error(Errc::InvalidArgument, "isotropy: empty radius schedule");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw Error(Errc::InvalidArgument,
                  "isotropy: radii must be positive and strictly increasing");
  }

  IsotropyCurve curve;
  curve.ray1 = r1;
  curve.ray2 = r2;
  std::vector<double> x, dev, sigma;
  for (double R : radii) {
    const MassEstimate l1 = line_mass(d, r1.origin, r1.direction, R, opts);
    const MassEstimate l2 = line_mass(d, r2.origin, r2.direction, R, opts);
    IsotropyPoint pt;
    pt.radius = R;
    pt.lambda1 = l1.value;
    pt.lambda2 = l2.value;
    pt.ratio = l1.value / l2.value;
    const auto b1 = bounds_if_applicable(d, r1.origin, R);
    const auto b2 = bounds_if_applicable(d, r2.origin, R);
    if (b1 && b2) {
      pt.bracket_low = b1->lower / b2->upper;
      pt.bracket_high = b1->upper / b2->lower;
    }
    curve.points.push_back(pt);

    x.push_back(std::log(R));
    dev.push_back(std::abs(pt.ratio - 1.0));
    sigma.push_back(std::abs(pt.ratio) *
                    std::hypot(l1.err_bound / l1.value, l2.err_bound / l2.value));
  }

  const double last = dev.back();
  if (radii.size() < 2) {
    curve.verdict = last <= tol ? IsotropyVerdict::Isotropic
                                : IsotropyVerdict::NotIsotropic;
    return curve;
  }
  const Trend t = trend(x, dev, sigma);
  if (last <= tol && t.nonincreasing())
    curve.verdict = IsotropyVerdict::Isotropic;
  else if (last > tol && !t.decreasing())
    curve.verdict = IsotropyVerdict::NotIsotropic;
  return curve;
}

}  // namespace muck
