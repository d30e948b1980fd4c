// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>

namespace muck {

namespace {

// Kronrod abscissae on [0, 1); odd indices are the Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double err;
  std::size_t segment;

  bool operator<(const Panel& o) const noexcept { return err < o.err; }
};

}  // namespace

QuadratureResult gauss_kronrod15(const std::function<double(double)>& f,
                                 double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  QuadratureResult r;
  r.value = kronrod * half;
  r.err = std::abs((kronrod - gauss) * half);
  r.panels = 1;
  r.converged = true;
  return r;
}

void AdaptiveQuadrature::add_segment(Integrand f, double a, double b) {
  segments_.push_back({std::move(f), a, b});
}

QuadratureResult AdaptiveQuadrature::integrate(double abs_tol, double rel_tol,
                                               std::size_t max_panels) const {
  std::priority_queue<Panel> queue;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t s = 0; s < segments_.size(); ++s) {
    const auto& seg = segments_[s];
    if (!(seg.b > seg.a)) continue;
    const auto r = gauss_kronrod15(seg.f, seg.a, seg.b);
    queue.push({seg.a, seg.b, r.value, r.err, s});
    total += r.value;
    total_err += r.err;
  }
  std::size_t panels = queue.size();
  while (!queue.empty() &&
         total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         panels < max_panels) {
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // cannot split further in floating point; keep its estimate
      queue.push({worst.a, worst.b, worst.value, 0.0, worst.segment});
      total_err -= worst.err;
      continue;
    }
    const auto& f = segments_[worst.segment].f;
    const auto left = gauss_kronrod15(f, worst.a, mid);
    const auto right = gauss_kronrod15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    queue.push({worst.a, mid, left.value, left.err, worst.segment});
    queue.push({mid, worst.b, right.value, right.err, worst.segment});
    ++panels;
  }

  // re-sum from the panels to shed accumulated rounding in the running total
  QuadratureResult result;
  result.panels = panels;
  double err = 0.0;
  double value = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    err += queue.top().err;
    queue.pop();
  }
  result.value = value;
  result.err = err;
  result.converged = err <= std::max(abs_tol, rel_tol * std::abs(value));
  return result;
}

}  // namespace muck
