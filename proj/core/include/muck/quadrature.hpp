// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace muck {

struct QuadratureResult {
  double value = 0.0;
  double err = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// 15-point Gauss-Kronrod rule on [a, b]; `err` is |K15 - G7|.
QuadratureResult gauss_kronrod15(const std::function<double(double)>& f,
                                 double a, double b);

/// Globally adaptive bisection over a set of segments. The panel with the
/// largest error estimate is split until the summed error drops below
/// max(abs_tol, rel_tol * |value|) or the panel budget runs out.
class AdaptiveQuadrature {
 public:
  using Integrand = std::function<double(double)>;

  void add_segment(Integrand f, double a, double b);

  QuadratureResult integrate(double abs_tol, double rel_tol,
                             std::size_t max_panels) const;

 private:
  struct Segment {
    Integrand f;
    double a;
    double b;
  };
  std::vector<Segment> segments_;
};

inline QuadratureResult integrate_adaptive(
    const std::function<double(double)>& f, double a, double b,
    double abs_tol = 1e-10, double rel_tol = 1e-8,
    std::size_t max_panels = 100'000) {
  AdaptiveQuadrature q;
  q.add_segment(f, a, b);
  return q.integrate(abs_tol, rel_tol, max_panels);
}

}  // namespace muck
