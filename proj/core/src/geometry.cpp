// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muck/error.hpp"
#include "muck/integrate.hpp"
#include "muck/rng.hpp"

namespace muck {

Ball::Ball(Point c, double r) : center(std::move(c)), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(Errc::InvalidArgument,
                "ball radius must be positive and finite, got " +
                    std::to_string(r));
  }
  for (double x : center.coords()) {
    if (!std::isfinite(x))
      throw Error(Errc::InvalidArgument, "ball center must be finite");
  }
}

double Ball::volume() const {
  return unit_ball_volume(dim()) *
         std::pow(radius, static_cast<double>(dim()));
}

bool Ball::contains(const Point& y) const noexcept {
  return distance(y, center) < radius;
}

GeometricSet GeometricSet::hyperplane(Point normal, double offset) {
  if (std::abs(normal.norm() - 1.0) > 1e-12)
    throw Error(Errc::InvalidArgument, "hyperplane normal must be a unit vector");
  if (!std::isfinite(offset))
    throw Error(Errc::InvalidArgument, "hyperplane offset must be finite");
  const std::size_t n = normal.dim();
  return GeometricSet(Hyperplane{std::move(normal), offset}, n);
}

GeometricSet GeometricSet::sphere(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(Errc::InvalidArgument, "sphere radius must be positive");
  const std::size_t n = center.dim();
  return GeometricSet(Sphere{std::move(center), radius}, n);
}

GeometricSet GeometricSet::point_set(std::vector<Point> points) {
  if (points.empty())
    throw Error(Errc::InvalidArgument, "point set must not be empty");
  const std::size_t n = points.front().dim();
  for (const auto& p : points) require_same_dim(p, points.front(), "point set");
  return GeometricSet(PointSet{std::move(points)}, n);
}

std::size_t GeometricSet::codim() const noexcept {
  return std::holds_alternative<PointSet>(kind_) ? dim_ : 1;
}

double distance_to_set(const GeometricSet& s, const Point& x) {
  if (x.dim() != s.dim()) {
    throw Error(Errc::DimensionMismatch,
                "distance_to_set: point has dimension " +
                    std::to_string(x.dim()) + ", set has " +
                    std::to_string(s.dim()));
  }
  if (const auto* h = std::get_if<Hyperplane>(&s.kind()))
    return std::abs(h->normal.dot(x) - h->offset);
  if (const auto* sp = std::get_if<Sphere>(&s.kind()))
    return std::abs(distance(x, sp->center) - sp->radius);
  const auto& ps = std::get<PointSet>(s.kind());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : ps.points) best = std::min(best, distance(x, p));
  return best;
}

namespace {

// Draws `count` points uniformly from {y in `from` : accept(y)} by rejection
// and returns how many of them fail `test`.
template <class Accept, class Test>
std::size_t count_violations(const Region& from, Accept accept, Test test,
                             std::size_t count, Xoshiro256pp& rng) {
  std::size_t violations = 0;
  std::size_t drawn = 0;
  const std::size_t max_attempts = 1000 * count;
  for (std::size_t attempt = 0; attempt < max_attempts && drawn < count;
       ++attempt) {
    const Point y = sample_uniform(from, rng);
    if (!accept(y)) continue;
    ++drawn;
    if (!test(y)) ++violations;
  }
  return violations;
}

}  // namespace

InclusionReport proof_inclusions(const Point& x1, const Point& x2, double R,
                                 std::size_t samples, std::uint64_t seed) {
  require_same_dim(x1, x2, "proof_inclusions");
  if (!(R > 0.0))
    throw Error(Errc::InvalidArgument, "proof_inclusions: R must be positive");

  InclusionReport report;
  report.samples_per_set = samples;
  const double d = distance(x1, x2);
  report.analytic_threshold = 2.0 * d;
  if (d == 0.0) return report;

  const Point* centers[2] = {&x1, &x2};
  for (int i = 0; i < 2; ++i) {
    const Point& xi = *centers[i];
    const Point& xj = *centers[1 - i];
    Xoshiro256pp rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const Region bi = Region::ball(Ball(xi, R));
    const double inner = std::max(0.0, R - d);

    // A_i = B_i \ B_j must lie in E_i = B_i \ B(x_i, R - d) ...
    std::size_t v = count_violations(
        bi, [&](const Point& y) { return distance(y, xj) >= R; },
        [&](const Point& y) { return distance(y, xi) >= inner; }, samples,
        rng);
    // ... and E_i in B_i.
    if (inner < R) {
      v += count_violations(
          Region::shell(xi, inner, R), [](const Point&) { return true; },
          [&](const Point& y) { return distance(y, xi) < R; }, samples, rng);
    }
    report.violations[i] = v;
    report.inclusion[i] = v == 0;

    // B(x_i, R/2) must lie in B_1 cap B_2.
    const std::size_t w = count_violations(
        Region::ball(Ball(xi, 0.5 * R)), [](const Point&) { return true; },
        [&](const Point& y) {
          return distance(y, x1) < R && distance(y, x2) < R;
        },
        samples, rng);
    report.violations[2 + i] = w;
    report.inclusion[2 + i] = w == 0;
  }
  return report;
}

}  // namespace muck
