// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/ap.hpp"

#include <algorithm>
#include <cmath>

#include "muck/error.hpp"
#include "muck/fitting.hpp"

namespace muck {

namespace {

MassEstimate normalized(MassEstimate m, double volume) {
  m.value /= volume;
  m.std_error /= volume;
  m.err_bound /= volume;
  return m;
}

// Points where the family should concentrate: singular centers, the point
// of a singular surface nearest the origin, or the origin.
std::vector<Point> anchors(const Density& d) {
  std::vector<Point> out;
  for (const auto& s : point_singularities(d)) out.push_back(s.center);
  if (auto surf = surface_singularity(d)) {
    if (const auto* h = std::get_if<Hyperplane>(&surf->set.kind())) {
      out.push_back(h->normal * h->offset);
    } else {
      const auto& sp = std::get<Sphere>(surf->set.kind());
      out.push_back(sp.center + Point::unit(d.dim(), 0) * sp.radius);
    }
  }
  if (out.empty()) out.push_back(Point::zero(d.dim()));
  return out;
}

std::vector<double> dyadic_radii(int j_min, int j_max) {
  if (j_max < j_min)
    throw Error(Errc::InvalidArgument, "ball family: j_max < j_min");
  std::vector<double> radii;
  for (int j = j_min; j <= j_max; ++j) radii.push_back(std::ldexp(1.0, j));
  return radii;
}

}  // namespace

ApProduct ap_product(const Density& d, const Ball& b, double p,
                     const SamplingBudget& budget) {
  if (!(p > 1.0))
    throw Error(Errc::InvalidArgument, "ap_product: p must exceed 1");
  if (b.dim() != d.dim())
    throw Error(Errc::DimensionMismatch, "ap_product: ball and density dimensions differ");
  const Density dual = dual_density(d, p);
  const Region region = Region::ball(b);
  const double volume = b.volume();

  ApProduct out;
  out.ball = b;
  out.p = p;
  out.avg_rho = normalized(
      mass(d, region, budget.samples, budget.seed, budget.options), volume);
  out.avg_dual = normalized(mass(dual, region, budget.samples,
                                 derive_seed(budget.seed, 1), budget.options),
                            volume);
  const double a = out.avg_rho.value;
  const double w = out.avg_dual.value;
  out.product = a * std::pow(w, p - 1.0);
  const double ra = out.avg_rho.std_error / a;
  const double rw = (p - 1.0) * out.avg_dual.std_error / w;
  out.std_error = out.product * std::sqrt(ra * ra + rw * rw);
  return out;
}

Ball BallFamily::ball(std::size_t i) const {
  return Ball(centers[i / radii.size()], radii[i % radii.size()]);
}

BallFamily BallFamily::standard(const Density& d, int j_min, int j_max) {
  BallFamily f;
  const std::size_t n = d.dim();
  const auto base = anchors(d);
  const Point e1 = Point::unit(n, 0);
  constexpr double eps = 1e-6;
  for (const auto& c : base) {
    f.centers.push_back(c);
    for (int k = 0; k <= 6; ++k)
      f.centers.push_back(c + e1 * (std::pow(10.0, k) * eps));
  }
  Point diagonal(n);
  for (std::size_t i = 0; i < n; ++i)
    diagonal[i] = -1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k <= 3; ++k) {
    const double s = std::pow(10.0, k);
    f.centers.push_back(base.front() + e1 * s);
    f.centers.push_back(base.front() + diagonal * s);
  }
  f.radii = dyadic_radii(j_min, j_max);
  return f;
}

BallFamily BallFamily::at_singularities(const Density& d, int j_min,
                                        int j_max) {
  BallFamily f;
  f.centers = anchors(d);
  f.radii = dyadic_radii(j_min, j_max);
  return f;
}

ApScanReport estimate_ap_constant(const Density& d, double p,
                                  const BallFamily& family,
                                  const SamplingBudget& budget) {
  if (family.size() == 0)
    throw Error(Errc::InvalidArgument, "estimate_ap_constant: empty ball family");
  ApScanReport report;
  report.p = p;
  const double r_max = *std::max_element(family.radii.begin(), family.radii.end());
  const double early_cut = r_max / 1000.0;
  bool has_early = false;

  for (std::size_t i = 0; i < family.size(); ++i) {
    ApScanEntry entry;
    entry.ball = family.ball(i);
    try {
      SamplingBudget local = budget;
      local.seed = derive_seed(budget.seed, i);
      ApProduct ap = ap_product(d, entry.ball, p, local);
      if (std::isfinite(ap.product)) {
        entry.result = ap;
      } else {
        entry.unbounded_reason = "product overflowed";
      }
    } catch (const Error& e) {
      if (e.code() != Errc::DualNonIntegrable &&
          e.code() != Errc::SingularHitRate)
        throw;
      entry.unbounded_reason = e.what();
    }

    if (entry.result) {
      const double v = entry.result->product;
      if (v > report.sup_product || !report.argmax) {
        report.sup_product = v;
        report.argmax = entry.ball;
      }
      if (entry.ball.radius <= early_cut) {
        has_early = true;
        report.early_sup = std::max(report.early_sup, v);
      }
    } else {
      ++report.unbounded_balls;
    }
    report.entries.push_back(std::move(entry));
  }

  report.violated =
      report.unbounded_balls > 0 ||
      (has_early && report.sup_product >= 2.0 * report.early_sup);
  return report;
}

DoublingReport doubling_ratio(const Density& d, const Ball& b, double p,
                              double ap_constant, const SamplingBudget& budget) {
  const Ball big(b.center, 2.0 * b.radius);
  const auto pair = mass_pair(d, Region::ball(big), Region::ball(b),
                              budget.samples, budget.seed, budget.options);
  DoublingReport r;
  r.ball = b;
  r.ratio = pair.ratio();
  r.std_error = pair.ratio_std_error();
  const auto n = static_cast<double>(d.dim());
  r.bound = std::pow(2.0, n * p) * std::pow(ap_constant, p);
  r.within_bound = r.ratio <= r.bound + 3.0 * r.std_error;
  return r;
}

SubsetScanReport subset_ratio_scan(const Density& d, const Ball& b,
                                   const std::vector<double>& thetas,
                                   const SamplingBudget& budget,
                                   std::optional<double> ap_constant,
                                   double p) {
  for (double t : thetas) {
    if (!(t > 0.0 && t < 1.0))
      throw Error(Errc::InvalidArgument,
                  "subset_ratio_scan: theta must lie in (0, 1)");
  }
  const auto n = static_cast<double>(d.dim());
  SubsetScanReport report;
  report.ball = b;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double theta = thetas[i];
    const Region shell =
        Region::shell(b.center, (1.0 - theta) * b.radius, b.radius);
    const auto pair =
        mass_pair(d, shell, Region::ball(b), budget.samples,
                  derive_seed(budget.seed, i), budget.options);
    SubsetScanPoint pt;
    pt.theta = theta;
    pt.volume_ratio = -std::expm1(n * std::log1p(-theta));
    pt.mass_ratio = pair.ratio();
    pt.mass_ratio_std_error = pair.ratio_std_error();
    if (ap_constant) {
      pt.lower_bound_holds =
          pt.volume_ratio <=
          *ap_constant *
              std::pow(pt.mass_ratio + 3.0 * pt.mass_ratio_std_error, 1.0 / p);
    }
    if (theta <= 0.5 && pt.mass_ratio > 0.0) {
      lx.push_back(std::log(pt.volume_ratio));
      ly.push_back(std::log(pt.mass_ratio));
    }
    report.points.push_back(pt);
  }

  const bool distinct = lx.size() >= 2 &&
                        *std::min_element(lx.begin(), lx.end()) <
                            *std::max_element(lx.begin(), lx.end());
  if (distinct) {
    const LinearFit fit = fit_line(lx, ly);
    report.gamma_raw = fit.slope;
    const double gamma = std::min(fit.slope, 1.0);
    report.gamma = gamma;
    double c = 0.0;
    for (const auto& pt : report.points)
      c = std::max(c, pt.mass_ratio / std::pow(pt.volume_ratio, gamma));
    report.c_tilde = c;
  }
  return report;
}

}  // namespace muck
