// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/homogeneity.hpp"

#include <algorithm>
#include <cmath>

#include "muck/error.hpp"
#include "muck/fitting.hpp"

namespace muck {

std::string_view to_string(HomogeneityVerdict v) noexcept {
  switch (v) {
    case HomogeneityVerdict::Homogeneous: return "Homogeneous";
    case HomogeneityVerdict::NotHomogeneous: return "NotHomogeneous";
    case HomogeneityVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<double> default_schedule(const Point& x1, const Point& x2,
                                     std::size_t count) {
  require_same_dim(x1, x2, "default_schedule");
  double d = distance(x1, x2);
  if (d == 0.0) d = 1.0;
  std::vector<double> radii;
  for (std::size_t j = 0; j < count; ++j)
    radii.push_back(4.0 * d * std::ldexp(1.0, static_cast<int>(j)));
  return radii;
}

RatioCurve ratio_curve(const Density& d, const Point& x1, const Point& x2,
                       const std::vector<double>& radii,
                       const SamplingBudget& budget) {
  require_same_dim(x1, x2, "ratio_curve");
  if (x1.dim() != d.dim())
    throw Error(Errc::DimensionMismatch, "ratio_curve: observers and density dimensions differ");
  if (radii.empty())
    throw Error(Errc::InvalidArgument, "ratio_curve: empty radius schedule");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1]))
      throw Error(Errc::InvalidArgument, "ratio_curve: radii must be strictly increasing");
  }
  const double dist = distance(x1, x2);
  if (!(radii.front() > 2.0 * dist)) {
    throw Error(Errc::OutsideRegime,
                "ratio_curve: first radius must exceed 2|x1 - x2| = " +
                    std::to_string(2.0 * dist));
  }

  RatioCurve curve;
  curve.x1 = x1;
  curve.x2 = x2;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double R = radii[j];
    const std::uint64_t seed = derive_seed(budget.seed, j);
    RatioPoint pt;
    pt.radius = R;
    if (dist == 0.0) {
      pt.mass1 = mass(d, Region::ball(Ball(x1, R)), budget.samples, seed,
                      budget.options);
      pt.mass2 = pt.mass1;
    } else {
      const auto pair =
          mass_pair(d, Region::ball(Ball(x1, R)), Region::ball(Ball(x2, R)),
                    budget.samples, seed, budget.options);
      pt.mass1 = pair.first;
      pt.mass2 = pair.second;
      pt.ratio = pair.ratio();
      pt.std_error = pair.ratio_std_error();
    }
    curve.points.push_back(pt);
  }
  curve.verdict = classify(curve);
  return curve;
}

HomogeneityVerdict classify(const RatioCurve& curve, double tol) {
  const auto& pts = curve.points;
  if (pts.size() < 2) return HomogeneityVerdict::Inconclusive;
  std::vector<double> x, y, s;
  for (const auto& p : pts) {
    x.push_back(std::log(p.radius));
    y.push_back(std::abs(p.ratio - 1.0));
    s.push_back(p.std_error);
  }
  const Trend t = trend(x, y, s);
  const std::size_t first = pts.size() >= 3 ? pts.size() - 3 : 0;
  bool close = true;
  bool far = true;
  for (std::size_t i = first; i < pts.size(); ++i) {
    close = close && y[i] <= std::max(tol, 3.0 * s[i]);
    far = far && y[i] > tol && y[i] >= 10.0 * s[i];
  }
  if (close && t.nonincreasing()) return HomogeneityVerdict::Homogeneous;
  if (far && !t.decreasing()) return HomogeneityVerdict::NotHomogeneous;
  return HomogeneityVerdict::Inconclusive;
}

double envelope(std::size_t n, double dist, double R, double K, double gamma) {
  if (!(dist > 0.0) || !(R > dist)) {
    throw Error(Errc::OutsideRegime,
                "envelope: need R > dist > 0 (R=" + std::to_string(R) +
                    ", dist=" + std::to_string(dist) + ")");
  }
  if (!(K > 0.0) || !(gamma > 0.0))
    throw Error(Errc::InvalidArgument, "envelope: K and gamma must be positive");
  // 1 - (1 - dist/R)^n without cancellation for dist << R
  const double g =
      -std::expm1(static_cast<double>(n) * std::log1p(-dist / R));
  return K * std::pow(g, gamma);
}

EnvelopeFit fit_envelope(const RatioCurve& curve) {
  EnvelopeFit fit;
  const std::size_t n = curve.dim();
  const double dist = curve.distance();
  std::vector<double> lx, ly;
  std::vector<const RatioPoint*> signal;
  for (const auto& p : curve.points) {
    const double dev = std::abs(p.ratio - 1.0);
    if (dev > 3.0 * p.std_error && dev > 0.0 && p.radius > dist && dist > 0.0) {
      lx.push_back(std::log(envelope(n, dist, p.radius, 1.0, 1.0)));
      ly.push_back(std::log(dev));
      signal.push_back(&p);
    }
  }
  fit.signal_points = signal.size();
  if (signal.size() < 4) {
    fit.bound_holds = std::all_of(
        curve.points.begin(), curve.points.end(), [](const RatioPoint& p) {
          return std::abs(p.ratio - 1.0) <= 3.0 * p.std_error;
        });
    return fit;
  }

  const LinearFit line = fit_line(lx, ly);
  fit.conclusive = true;
  fit.gamma = line.slope;
  fit.K_fit = std::exp(line.intercept);
  fit.max_residual = line.max_abs_residual;
  for (std::size_t i = 0; i < signal.size(); ++i)
    fit.K = std::max(fit.K, std::exp(ly[i] - fit.gamma * lx[i]));

  fit.bound_holds = true;
  for (const auto& p : curve.points) {
    const double g = -std::expm1(static_cast<double>(n) *
                                 std::log1p(-dist / p.radius));
    const double bound = fit.K * std::pow(g, fit.gamma) + 3.0 * p.std_error;
    // relative slack for the rounding in exp/log
    if (std::abs(p.ratio - 1.0) > bound * (1.0 + 1e-12)) fit.bound_holds = false;
  }
  return fit;
}

void attach_envelope(RatioCurve& curve, const EnvelopeFit& fit) {
  curve.envelope.clear();
  if (!fit.conclusive || !(fit.gamma > 0.0) || !(fit.K > 0.0)) return;
  for (const auto& p : curve.points)
    curve.envelope.push_back(
        envelope(curve.dim(), curve.distance(), p.radius, fit.K, fit.gamma));
}

}  // namespace muck
