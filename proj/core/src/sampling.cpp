// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "muck/error.hpp"
#include "muck/integrate.hpp"

namespace muck {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::ClosedForm: return "ClosedForm";
    case Method::MonteCarlo: return "MonteCarlo";
    case Method::StratifiedMC: return "StratifiedMC";
    case Method::Quadrature: return "Quadrature";
  }
  return "Unknown";
}

Region Region::ball(const Ball& b) {
  Region r;
  r.center = b.center;
  r.inner = 0.0;
  r.outer = b.radius;
  return r;
}

Region Region::shell(Point center, double inner, double outer) {
  if (!(inner >= 0.0) || !(outer > inner) || !std::isfinite(outer)) {
    throw Error(Errc::InvalidArgument,
                "shell radii must satisfy 0 <= inner < outer < inf");
  }
  require_valid_dim(center.dim());
  Region r;
  r.center = std::move(center);
  r.inner = inner;
  r.outer = outer;
  return r;
}

double Region::volume() const {
  const auto n = static_cast<double>(dim());
  const double full = unit_ball_volume(dim()) * std::pow(outer, n);
  if (inner == 0.0) return full;
  return full * -std::expm1(n * std::log(inner / outer));
}

bool Region::contains(const Point& y) const noexcept {
  const double r = distance(y, center);
  return r < outer && r >= inner;
}

Point uniform_direction(std::size_t dim, Xoshiro256pp& rng) {
  Point u(dim);
  if (dim == 1) {
    u[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return u;
  }
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) u[i] = rng.normal();
    const double s = u.norm();
    if (s > 0.0) return u * (1.0 / s);
  }
}

Point sample_uniform(const Region& r, Xoshiro256pp& rng) {
  const std::size_t dim = r.dim();
  const auto n = static_cast<double>(dim);
  const Point u = uniform_direction(dim, rng);
  // radial CDF on [inner, outer] is proportional to t^n - inner^n
  const double alpha = r.inner == 0.0 ? 0.0 : std::pow(r.inner / r.outer, n);
  const double t =
      r.outer * std::pow(alpha + rng.uniform() * (1.0 - alpha), 1.0 / n);
  return r.center + u * t;
}

std::optional<double> closed_form_mass(const Density& d, const Region& r) {
  if (r.dim() != d.dim()) {
    throw Error(Errc::DimensionMismatch, "closed_form_mass: region dimension " +
                                             std::to_string(r.dim()) +
                                             " vs density " +
                                             std::to_string(d.dim()));
  }
  if (r.is_ball()) return closed_form_ball_mass(d, Ball(r.center, r.outer));

  const auto n = static_cast<double>(d.dim());
  const double log_q = std::log(r.inner / r.outer);
  if (const auto* c = d.as<ConstantDensity>()) return c->value * r.volume();
  if (const auto* rp = d.as<RadialPowerDensity>()) {
    if (!(r.center == rp->center)) return std::nullopt;
    const double e = n + rp->beta;
    return unit_sphere_area(d.dim()) * std::pow(r.outer, e) *
           -std::expm1(e * log_q) / e;
  }
  const auto outer = closed_form_ball_mass(d, Ball(r.center, r.outer));
  const auto inner = closed_form_ball_mass(d, Ball(r.center, r.inner));
  if (!outer || !inner) return std::nullopt;
  return *outer - *inner;
}

}  // namespace muck
