// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "muck/error.hpp"

namespace muck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// r^beta with the conventions 0^beta = +inf (beta < 0), 0 (beta > 0), 1.
double power(double r, double beta) noexcept {
  if (r == 0.0) {
    if (beta < 0.0) return kInf;
    if (beta > 0.0) return 0.0;
    return 1.0;
  }
  return std::pow(r, beta);
}

void require_finite(const Point& p, const char* what) {
  for (double x : p.coords()) {
    if (!std::isfinite(x))
      throw Error(Errc::InvalidDensity, std::string(what) + " must be finite");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw Error(Errc::InvalidDensity, std::string(what) + " must be finite");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_separated(const std::vector<Point>& centers, const char* what) {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      if (distance(centers[i], centers[j]) < kMinCenterSeparation) {
        throw Error(Errc::InvalidDensity,
                    std::string(what) + ": centers " + std::to_string(i) +
                        " and " + std::to_string(j) +
                        " are closer than 1e-9");
      }
    }
  }
}

bool in_ap_range(double beta, double n, double p) noexcept {
  if (!(beta > -n)) return false;
  if (p == 1.0) return beta <= 0.0;
  return beta < n * (p - 1.0);
}

void require_dim(const Density& d, const Point& x, const char* what) {
  if (x.dim() != d.dim()) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + ": point has dimension " +
                    std::to_string(x.dim()) + ", density has " +
                    std::to_string(d.dim()));
  }
}

}  // namespace

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::Member: return "Member";
    case Membership::NonMember: return "NonMember";
    case Membership::Unknown: return "Unknown";
  }
  return "Unknown";
}

Density Density::constant(std::size_t dim, double value) {
  require_valid_dim(dim);
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(Errc::InvalidDensity, "constant density must be positive and finite");
  return Density(ConstantDensity{value}, dim);
}

Density Density::radial_power(Point center, double beta) {
  require_valid_dim(center.dim());
  require_finite(center, "radial power center");
  require_finite(beta, "beta");
  const auto n = static_cast<double>(center.dim());
  if (!(beta > -n)) {
    throw Error(Errc::InvalidDensity,
                "radial power exponent beta=" + fmt(beta) +
                    " is not locally integrable (need beta > -" + fmt(n) + ")");
  }
  const std::size_t dim = center.dim();
  return Density(RadialPowerDensity{std::move(center), beta}, dim);
}

Density Density::product(std::vector<PowerFactor> factors) {
  if (factors.empty())
    throw Error(Errc::InvalidDensity, "product density needs at least one factor");
  const std::size_t dim = factors.front().center.dim();
  require_valid_dim(dim);
  const auto n = static_cast<double>(dim);
  double negative_sum = 0.0;
  std::vector<Point> centers;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.center.dim() != dim)
      throw Error(Errc::DimensionMismatch, "product density: factor dimensions differ");
    require_finite(f.center, "product factor center");
    require_finite(f.beta, "product factor beta");
    if (!(f.beta > -n)) {
      throw Error(Errc::InvalidDensity,
                  "product factor " + std::to_string(i) + " exponent beta=" +
                      fmt(f.beta) + " is not locally integrable (need beta > -" +
                      fmt(n) + ")");
    }
    if (f.beta < 0.0) negative_sum += f.beta;
    centers.push_back(f.center);
  }
  if (!(negative_sum > -n)) {
    throw Error(Errc::InvalidDensity,
                "product density: sum of negative exponents " + fmt(negative_sum) +
                    " must exceed -" + fmt(n));
  }
  require_separated(centers, "product density");
  return Density(ProductDensity{std::move(factors)}, dim);
}

Density Density::distance_power(GeometricSet set, double beta) {
  require_valid_dim(set.dim());
  require_finite(beta, "beta");
  const auto codim = static_cast<double>(set.codim());
  if (!(beta > -codim)) {
    throw Error(Errc::InvalidDensity,
                "distance power exponent beta=" + fmt(beta) +
                    " is not locally integrable across a set of codimension " +
                    fmt(codim) + " (need beta > -" + fmt(codim) + ")");
  }
  if (const auto* ps = std::get_if<PointSet>(&set.kind()))
    require_separated(ps->points, "distance power point set");
  const std::size_t dim = set.dim();
  return Density(DistancePowerDensity{std::move(set), beta}, dim);
}

Density Density::exponential(Point direction, double rate) {
  require_valid_dim(direction.dim());
  require_finite(direction, "exponential direction");
  require_finite(rate, "exponential rate");
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw Error(Errc::InvalidDensity, "exponential direction must be a unit vector");
  const std::size_t dim = direction.dim();
  return Density(ExponentialDensity{std::move(direction), rate, true}, dim);
}

std::string Density::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantDensity>) {
          os << "constant(c=" << k.value;
        } else if constexpr (std::is_same_v<T, RadialPowerDensity>) {
          os << "radial_power(center=" << k.center.to_string()
             << ", beta=" << k.beta;
        } else if constexpr (std::is_same_v<T, ProductDensity>) {
          os << "product_of_radial_powers(factors=" << k.factors.size();
        } else if constexpr (std::is_same_v<T, DistancePowerDensity>) {
          const char* kind = std::holds_alternative<Hyperplane>(k.set.kind())
                                 ? "hyperplane"
                             : std::holds_alternative<Sphere>(k.set.kind())
                                 ? "sphere"
                                 : "point_set";
          os << "distance_power(set=" << kind << ", beta=" << k.beta;
        } else {
          os << "exponential(direction=" << k.direction.to_string()
             << ", rate=" << k.rate;
        }
      },
      kind_);
  os << ", dim=" << dim_ << ')';
  return os.str();
}

double eval(const Density& d, const Point& x) {
  require_dim(d, x, "eval");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantDensity>) {
          return k.value;
        } else if constexpr (std::is_same_v<T, RadialPowerDensity>) {
          return power(distance(x, k.center), k.beta);
        } else if constexpr (std::is_same_v<T, ProductDensity>) {
          // Centers are distinct, so at most one factor is 0 or +inf.
          double v = 1.0;
          for (const auto& f : k.factors) {
            const double t = power(distance(x, f.center), f.beta);
            if (!std::isfinite(t) || t == 0.0) return t;
            v *= t;
          }
          return v;
        } else if constexpr (std::is_same_v<T, DistancePowerDensity>) {
          return power(distance_to_set(k.set, x), k.beta);
        } else {
          return std::exp(k.rate * k.direction.dot(x));
        }
      },
      d.kind());
}

double dual_eval(const Density& d, const Point& x, double p) {
  if (!(p > 1.0))
    throw Error(Errc::InvalidArgument, "dual_eval: p must exceed 1, got " + fmt(p));
  const double v = eval(d, x);
  if (std::isinf(v)) return 0.0;
  if (v == 0.0) return kInf;
  return std::pow(v, -1.0 / (p - 1.0));
}

Density dual_density(const Density& d, double p) {
  if (!(p > 1.0))
    throw Error(Errc::InvalidArgument, "dual_density: p must exceed 1, got " + fmt(p));
  const double s = -1.0 / (p - 1.0);
  try {
    return std::visit(
        [&](const auto& k) -> Density {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, ConstantDensity>) {
            return Density::constant(d.dim(), std::pow(k.value, s));
          } else if constexpr (std::is_same_v<T, RadialPowerDensity>) {
            return Density::radial_power(k.center, k.beta * s);
          } else if constexpr (std::is_same_v<T, ProductDensity>) {
            auto factors = k.factors;
            for (auto& f : factors) f.beta *= s;
            return Density::product(std::move(factors));
          } else if constexpr (std::is_same_v<T, DistancePowerDensity>) {
            return Density::distance_power(k.set, k.beta * s);
          } else {
            return Density::exponential(k.direction, k.rate * s);
          }
        },
        d.kind());
  } catch (const Error& e) {
    if (e.code() != Errc::InvalidDensity) throw;
    throw Error(Errc::DualNonIntegrable,
                "dual non-integrable at p=" + fmt(p) + ": " + e.what());
  }
}

Membership ap_membership(const Density& d, double p) {
  if (!(p >= 1.0))
    throw Error(Errc::InvalidArgument, "ap_membership: p must be >= 1, got " + fmt(p));
  const auto n = static_cast<double>(d.dim());
  return std::visit(
      [&](const auto& k) -> Membership {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ConstantDensity>) {
          return Membership::Member;
        } else if constexpr (std::is_same_v<T, RadialPowerDensity>) {
          return in_ap_range(k.beta, n, p) ? Membership::Member
                                           : Membership::NonMember;
        } else if constexpr (std::is_same_v<T, ProductDensity>) {
          // Sufficient: every local exponent and the exponent seen from
          // infinity (the sum) are in range.
          double sum = 0.0;
          for (const auto& f : k.factors) {
            if (!in_ap_range(f.beta, n, p)) return Membership::Unknown;
            sum += f.beta;
          }
          return in_ap_range(sum, n, p) ? Membership::Member
                                        : Membership::Unknown;
        } else if constexpr (std::is_same_v<T, DistancePowerDensity>) {
          if (std::holds_alternative<PointSet>(k.set.kind())) {
            return in_ap_range(k.beta, n, p) ? Membership::Member
                                             : Membership::Unknown;
          }
          // Locally a one-dimensional power of the normal coordinate; far
          // away from a sphere it looks like |x|^beta, which the same range
          // also covers.
          return in_ap_range(k.beta, 1.0, p) ? Membership::Member
                                             : Membership::Unknown;
        } else {
          return Membership::NonMember;
        }
      },
      d.kind());
}

std::optional<double> closed_form_ball_mass(const Density& d, const Ball& b) {
  require_dim(d, b.center, "closed_form_ball_mass");
  const std::size_t dim = d.dim();
  const auto n = static_cast<double>(dim);
  const double R = b.radius;
  if (const auto* c = d.as<ConstantDensity>()) return c->value * b.volume();
  if (const auto* rp = d.as<RadialPowerDensity>()) {
    if (!(b.center == rp->center)) return std::nullopt;
    const double e = n + rp->beta;
    return unit_sphere_area(dim) * std::pow(R, e) / e;
  }
  if (const auto* ex = d.as<ExponentialDensity>()) {
    const double k = std::abs(ex->rate);
    const double shift = ex->rate * ex->direction.dot(b.center);
    if (k == 0.0) return b.volume();
    double v = 0.0;
    if (dim == 1) {
      // e^{shift} (e^{kR} - e^{-kR}) / k, without cancellation for small kR
      v = std::exp(shift + k * R) * -std::expm1(-2.0 * k * R) / k;
    } else {
      const double z = k * R;
      if (z > 600.0) return std::nullopt;
      v = std::exp(shift) * std::pow(2.0 * std::numbers::pi * R / k, 0.5 * n) *
          std::cyl_bessel_i(0.5 * n, z);
    }
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  }
  return std::nullopt;
}

std::vector<PointSingularity> point_singularities(const Density& d) {
  std::vector<PointSingularity> out;
  if (const auto* rp = d.as<RadialPowerDensity>()) {
    out.push_back({rp->center, rp->beta});
  } else if (const auto* pr = d.as<ProductDensity>()) {
    for (const auto& f : pr->factors) out.push_back({f.center, f.beta});
  } else if (const auto* dp = d.as<DistancePowerDensity>()) {
    if (const auto* ps = std::get_if<PointSet>(&dp->set.kind()))
      for (const auto& p : ps->points) out.push_back({p, dp->beta});
  }
  return out;
}

std::optional<SurfaceSingularity> surface_singularity(const Density& d) {
  const auto* dp = d.as<DistancePowerDensity>();
  if (dp == nullptr || std::holds_alternative<PointSet>(dp->set.kind()))
    return std::nullopt;
  return SurfaceSingularity{dp->set, dp->beta};
}

double eval_relative(const Density& d, const Point& y, std::size_t i) {
  if (d.as<RadialPowerDensity>() != nullptr) return 1.0;
  if (const auto* pr = d.as<ProductDensity>()) {
    double v = 1.0;
    for (std::size_t j = 0; j < pr->factors.size(); ++j) {
      if (j == i) continue;
      v *= power(distance(y, pr->factors[j].center), pr->factors[j].beta);
    }
    return v;
  }
  if (const auto* dp = d.as<DistancePowerDensity>()) {
    const auto& pts = std::get<PointSet>(dp->set.kind()).points;
    const double ri = distance(y, pts[i]);
    if (ri == 0.0) return 1.0;
    const double dmin = distance_to_set(dp->set, y);
    return dmin == ri ? 1.0 : std::pow(dmin / ri, dp->beta);
  }
  throw Error(Errc::InvalidArgument, "eval_relative: density has no point singularities");
}

}  // namespace muck
