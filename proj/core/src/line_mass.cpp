// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "muck/error.hpp"
#include "muck/integrate.hpp"
#include "muck/quadrature.hpp"

namespace muck {

namespace {

// Rays closer than this (relative) to a singular point are treated as
// passing through it.
constexpr double kHitTolerance = 1e-15;

enum class EventKind { Point, Hyperplane, SphereCrossing, SphereTangent };

// A parameter t_s where rho(x + t v) ~ rel(t) |t - t_s|^order.
struct Event {
  double t = 0.0;
  double order = 0.0;
  EventKind kind = EventKind::Point;
  std::size_t feature = 0;
  double slope = 0.0;   // hyperplane: |<normal, v>|; sphere: <v, y_s - c>
  double radius = 0.0;  // sphere radius
};

struct RayProblem {
  const Density& d;
  Point x;
  Point v;

  Point at(double t) const { return x + v * t; }

  // rho(x + (t_s + tau) v) / |tau|^order, finite as tau -> 0.
  double relative(const Event& e, double tau) const {
    const Point y = at(e.t + tau);
    switch (e.kind) {
      case EventKind::Point:
        return eval_relative(d, y, e.feature);
      case EventKind::Hyperplane:
        return std::pow(e.slope, e.order);
      case EventKind::SphereCrossing: {
        const double r2 = e.radius * e.radius + 2.0 * tau * e.slope + tau * tau;
        const double ratio =
            std::abs(2.0 * e.slope + tau) / (std::sqrt(r2) + e.radius);
        return std::pow(ratio, e.order);
      }
      case EventKind::SphereTangent: {
        const double r2 = e.radius * e.radius + tau * tau;
        return std::pow(1.0 / (std::sqrt(r2) + e.radius), 0.5 * e.order);
      }
    }
    return 0.0;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void add_event(std::vector<Event>& events, Event e, double R) {
  if (e.t < 0.0 || e.t > R) return;
  if (e.order <= -1.0) {
    throw Error(Errc::LambdaUndefined,
                "lambda undefined: the ray meets the singular set at t=" +
                    fmt(e.t) + " with order " + fmt(e.order) +
                    " <= -1, which is not integrable along the ray");
  }
  events.push_back(e);
}

void collect(const Density& d, const Point& x, const Point& v, double R,
             std::vector<Event>& events, std::vector<double>& breaks) {
  const auto features = point_singularities(d);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    if (f.exponent == 0.0) continue;
    const Point q = x - f.center;
    const double t_star = -q.dot(v);
    const double h = (q + v * t_star).norm();
    if (h <= kHitTolerance * std::max(1.0, q.norm())) {
      add_event(events, {t_star, f.exponent, EventKind::Point, i},
                R);
    } else if (t_star > 0.0 && t_star < R) {
      breaks.push_back(t_star);
    }
  }

  const auto surf = surface_singularity(d);
  if (!surf) return;
  const double beta = surf->exponent;
  if (const auto* hp = std::get_if<Hyperplane>(&surf->set.kind())) {
    const double vn = hp->normal.dot(v);
    const double g = hp->normal.dot(x) - hp->offset;
    if (vn == 0.0) {
      if (g == 0.0 && beta < 0.0) {
        throw Error(Errc::LambdaUndefined,
                    "lambda undefined: the ray lies inside the singular "
                    "hyperplane");
      }
      return;
    }
    Event e;
    e.t = -g / vn;
    e.order = beta;
    e.kind = EventKind::Hyperplane;
    e.slope = std::abs(vn);
    add_event(events, e, R);
    return;
  }
  const auto& sp = std::get<Sphere>(surf->set.kind());
  const Point q = x - sp.center;
  const double b = q.dot(v);
  const double c = q.norm2() - sp.radius * sp.radius;
  const double disc = b * b - c;
  const double scale = sp.radius * sp.radius;
  if (std::abs(disc) <= 1e-14 * scale) {
    Event e;
    e.t = -b;
    e.order = 2.0 * beta;
    e.kind = EventKind::SphereTangent;
    e.radius = sp.radius;
    add_event(events, e, R);
  } else if (disc > 0.0) {
    const double root = std::sqrt(disc);
    for (double t : {-b - root, -b + root}) {
      Event e;
      e.t = t;
      e.order = beta;
      e.kind = EventKind::SphereCrossing;
      e.slope = v.dot(x + v * t - sp.center);
      e.radius = sp.radius;
      add_event(events, e, R);
    }
  } else if (-b > 0.0 && -b < R) {
    breaks.push_back(-b);
  }
}

}  // namespace

MassEstimate line_mass(const Density& d, const Point& x, const Point& v,
                       double R, const LineMassOptions& opts) {
  if (x.dim() != d.dim() || v.dim() != d.dim()) {
    throw Error(Errc::DimensionMismatch,
                "line_mass: ray dimension does not match density dimension " +
                    std::to_string(d.dim()));
  }
  if (std::abs(v.norm() - 1.0) > 1e-12)
    throw Error(Errc::InvalidArgument, "line_mass: direction must be a unit vector");
  if (!(R > 0.0) || !std::isfinite(R))
    throw Error(Errc::InvalidArgument, "line_mass: R must be positive and finite");

  std::vector<Event> events;
  std::vector<double> breaks = {0.0, R};
  collect(d, x, v, R, events, breaks);
  for (const auto& e : events) breaks.push_back(e.t);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto event_at = [&](double t) -> const Event* {
    for (const auto& e : events)
      if (e.t == t && e.order != 0.0) return &e;
    return nullptr;
  };

  const RayProblem ray{d, x, v};
  AdaptiveQuadrature quad;
  auto plain = [&](double a, double b) {
    quad.add_segment([&ray](double t) { return eval(ray.d, ray.at(t)); }, a, b);
  };
  // Panel [a, b] with the singular end at `e`; `sign` = +1 when the
  // singularity is the left end. Substituting |t - t_s| = L s^{1/(1+e)}
  // turns the integrand into L^{1+e}/(1+e) * rel, smooth in s.
  auto singular = [&](const Event& e, double L, double sign) {
    const double p = 1.0 / (1.0 + e.order);
    const double scale = std::pow(L, 1.0 + e.order) * p;
    quad.add_segment(
        [&ray, &e, L, p, scale, sign](double s) {
          const double tau = sign * L * std::pow(s, p);
          return scale * ray.relative(e, tau);
        },
        0.0, 1.0);
  };

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const Event* left = event_at(a);
    const Event* right = event_at(b);
    if (left == nullptr && right == nullptr) {
      plain(a, b);
    } else if (left != nullptr && right != nullptr) {
      const double mid = 0.5 * (a + b);
      singular(*left, mid - a, 1.0);
      singular(*right, b - mid, -1.0);
    } else if (left != nullptr) {
      singular(*left, b - a, 1.0);
    } else {
      singular(*right, b - a, -1.0);
    }
  }

  const auto r = quad.integrate(opts.abs_tol, opts.rel_tol, opts.max_panels);
  if (!r.converged || !std::isfinite(r.value)) {
    throw Error(Errc::BudgetExhausted,
                "line_mass: quadrature did not reach tolerance within " +
                    std::to_string(opts.max_panels) + " panels (estimate " +
                    fmt(r.value) + " +/- " + fmt(r.err) + ")");
  }
  MassEstimate m;
  m.value = r.value;
  m.err_bound = r.err;
  m.n_samples = r.panels;
  m.method = Method::Quadrature;
  return m;
}

}  // namespace muck
