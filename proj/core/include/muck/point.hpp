// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace muck {

/// Largest supported ambient dimension.
inline constexpr std::size_t kMaxDim = 16;

/// A point (or vector) of R^n with n <= kMaxDim. Stored inline so the
/// Monte Carlo inner loops never allocate.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim);
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  static Point zero(std::size_t dim) { return Point(dim); }
  static Point unit(std::size_t dim, std::size_t axis);

  std::size_t dim() const noexcept { return dim_; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

  double norm() const noexcept;
  double norm2() const noexcept;
  double dot(const Point& other) const noexcept;

  Point& operator+=(const Point& o) noexcept;
  Point& operator-=(const Point& o) noexcept;
  Point& operator*=(double s) noexcept;

  friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
  friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
  friend Point operator*(Point a, double s) noexcept { return a *= s; }
  friend Point operator*(double s, Point a) noexcept { return a *= s; }
  friend bool operator==(const Point& a, const Point& b) noexcept;

  std::string to_string() const;

 private:
  void require_finite() const;
  std::array<double, kMaxDim> c_{};
  std::size_t dim_ = 0;
};

double distance(const Point& a, const Point& b) noexcept;

/// Throws Errc::DimensionMismatch unless a.dim() == b.dim().
void require_same_dim(const Point& a, const Point& b, const char* what);

/// Throws Errc::InvalidArgument unless 1 <= dim <= kMaxDim.
void require_valid_dim(std::size_t dim);

/// Surface measure of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(std::size_t n);

/// Lebesgue measure of the unit ball in R^n.
double unit_ball_volume(std::size_t n);

}  // namespace muck
