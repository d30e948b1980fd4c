// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "muck/geometry.hpp"
#include "muck/point.hpp"

namespace muck {

struct ConstantDensity {
  double value = 1.0;
};

/// |x - center|^beta
struct RadialPowerDensity {
  Point center;
  double beta = 0.0;
};

struct PowerFactor {
  Point center;
  double beta = 0.0;
};

/// prod_i |x - c_i|^{beta_i}
struct ProductDensity {
  std::vector<PowerFactor> factors;
};

/// d(x, F)^beta
struct DistancePowerDensity {
  GeometricSet set;
  double beta = 0.0;
};

/// exp(rate * <direction, x>). Grows exponentially along `direction`, which
/// rules out large-scale homogeneity.
struct ExponentialDensity {
  Point direction;
  double rate = 1.0;
  bool known_inhomogeneous = true;
};

enum class Membership { Member, NonMember, Unknown };
std::string_view to_string(Membership m) noexcept;

/// Minimum separation between distinct singular centers.
inline constexpr double kMinCenterSeparation = 1e-9;

/// An analytic density on R^n. Immutable once built; the factory functions
/// enforce local integrability so every ball mass is finite.
class Density {
 public:
  using Kind = std::variant<ConstantDensity, RadialPowerDensity, ProductDensity,
                            DistancePowerDensity, ExponentialDensity>;

  static Density constant(std::size_t dim, double value);
  static Density radial_power(Point center, double beta);
  static Density product(std::vector<PowerFactor> factors);
  static Density distance_power(GeometricSet set, double beta);
  static Density exponential(Point direction, double rate);

  std::size_t dim() const noexcept { return dim_; }
  const Kind& kind() const noexcept { return kind_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&kind_);
  }

  /// Short human-readable description, e.g. "radial_power(beta=-0.5, dim=2)".
  std::string describe() const;

 private:
  Density(Kind k, std::size_t dim) : kind_(std::move(k)), dim_(dim) {}

  Kind kind_;
  std::size_t dim_;
};

/// rho(x). +inf on the singular set when the exponent is negative, 0 there
/// when it is positive.
double eval(const Density& d, const Point& x);

/// rho(x)^(-1/(p-1)) with +inf -> 0 and 0 -> +inf. Requires p > 1.
double dual_eval(const Density& d, const Point& x, double p);

/// The density rho^(-1/(p-1)) as a member of the same family.
/// Throws Errc::DualNonIntegrable if the result is not locally integrable.
Density dual_density(const Density& d, double p);

/// Analytic A_p membership. p == 1 means A_1.
Membership ap_membership(const Density& d, double p);

/// Exact mass of a ball when a closed form is known: constants, radial
/// powers on balls centred at their singularity, and exponentials.
std::optional<double> closed_form_ball_mass(const Density& d, const Ball& b);

/// A point where the density behaves like |y - center|^exponent.
struct PointSingularity {
  Point center;
  double exponent = 0.0;
};

/// Point singularities (and zeros) of the density, in factor order.
/// Empty for families whose singular set is not a finite point set.
std::vector<PointSingularity> point_singularities(const Density& d);

/// The singular hypersurface for distance powers of hyperplanes and spheres.
struct SurfaceSingularity {
  GeometricSet set;
  double exponent = 0.0;
};
std::optional<SurfaceSingularity> surface_singularity(const Density& d);

/// rho(y) / |y - c_i|^{beta_i} for the i-th point singularity, computed
/// without forming the singular factor, so it is finite at y == c_i.
double eval_relative(const Density& d, const Point& y, std::size_t i);

}  // namespace muck
