// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "muck/point.hpp"

namespace muck {

/// Open Euclidean ball {y : |y - center| < radius}.
struct Ball {
  Point center;
  double radius = 1.0;

  Ball() = default;
  Ball(Point c, double r);

  std::size_t dim() const noexcept { return center.dim(); }
  double volume() const;
  bool contains(const Point& y) const noexcept;
};

struct Hyperplane {
  Point normal;  // unit length
  double offset = 0.0;
};

struct Sphere {
  Point center;
  double radius = 1.0;
};

struct PointSet {
  std::vector<Point> points;
};

/// A closed set F whose distance function d(x, F) shapes a density.
class GeometricSet {
 public:
  using Kind = std::variant<Hyperplane, Sphere, PointSet>;

  static GeometricSet hyperplane(Point normal, double offset);
  static GeometricSet sphere(Point center, double radius);
  static GeometricSet point_set(std::vector<Point> points);

  std::size_t dim() const noexcept { return dim_; }
  const Kind& kind() const noexcept { return kind_; }

  /// 1 for hyperplanes and spheres, dim() for finite point sets.
  std::size_t codim() const noexcept;

 private:
  GeometricSet(Kind k, std::size_t dim) : kind_(std::move(k)), dim_(dim) {}

  Kind kind_;
  std::size_t dim_;
};

double distance_to_set(const GeometricSet& s, const Point& x);

/// Outcome of checking the four set inclusions used to bound the two
/// observers' mass difference:
///   (1) B1 \ B2 subset of E1 = B1 \ B(x1, R - d) subset of B1
///   (2) the same with the roles of the observers swapped
///   (3) B(x1, R/2) subset of B1 cap B2
///   (4) B(x2, R/2) subset of B1 cap B2
/// Each inclusion is checked on uniform samples from the smaller set.
struct InclusionReport {
  bool inclusion[4] = {true, true, true, true};
  std::size_t violations[4] = {0, 0, 0, 0};
  std::size_t samples_per_set = 0;
  /// (3) and (4) hold analytically for every R above this value (2|x1-x2|).
  double analytic_threshold = 0.0;

  bool all() const noexcept {
    return inclusion[0] && inclusion[1] && inclusion[2] && inclusion[3];
  }
};

InclusionReport proof_inclusions(const Point& x1, const Point& x2, double R,
                                 std::size_t samples = 10'000,
                                 std::uint64_t seed = 0x5eed);

}  // namespace muck
