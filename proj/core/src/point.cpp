// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include "muck/point.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "muck/error.hpp"

namespace muck {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DimensionMismatch: return "dimension mismatch";
    case Errc::InvalidArgument: return "invalid argument";
    case Errc::InvalidDensity: return "invalid density";
    case Errc::DualNonIntegrable: return "dual non-integrable";
    case Errc::LambdaUndefined: return "lambda undefined";
    case Errc::OutsideRegime: return "outside regime";
    case Errc::SingularHitRate: return "singular hit rate";
    case Errc::BudgetExhausted: return "budget exhausted";
    case Errc::Config: return "config";
  }
  return "unknown";
}

void require_valid_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw Error(Errc::InvalidArgument,
                "dimension must be in [1, " + std::to_string(kMaxDim) +
                    "], got " + std::to_string(dim));
  }
}

Point::Point(std::size_t dim) : dim_(dim) { require_valid_dim(dim); }

Point::Point(std::initializer_list<double> coords) : dim_(coords.size()) {
  require_valid_dim(dim_);
  std::size_t i = 0;
  for (double c : coords) c_[i++] = c;
  require_finite();
}

Point::Point(std::span<const double> coords) : dim_(coords.size()) {
  require_valid_dim(dim_);
  for (std::size_t i = 0; i < dim_; ++i) c_[i] = coords[i];
  require_finite();
}

void Point::require_finite() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!std::isfinite(c_[i]))
      throw Error(Errc::InvalidArgument, "point coordinates must be finite");
  }
}

Point Point::unit(std::size_t dim, std::size_t axis) {
  Point p(dim);
  if (axis >= dim) throw Error(Errc::InvalidArgument, "axis out of range");
  p[axis] = 1.0;
  return p;
}

double Point::norm2() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * c_[i];
  return s;
}

double Point::norm() const noexcept {
  return std::sqrt(norm2());
}

double Point::dot(const Point& o) const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
  return s;
}

Point& Point::operator+=(const Point& o) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

Point& Point::operator*=(double s) noexcept {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
  return *this;
}

bool operator==(const Point& a, const Point& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::string Point::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < dim_; ++i) os << (i ? ", " : "") << c_[i];
  os << ')';
  return os.str();
}

double distance(const Point& a, const Point& b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

void require_same_dim(const Point& a, const Point& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw Error(Errc::DimensionMismatch,
                std::string(what) + ": dimension " + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()));
  }
}

double unit_sphere_area(std::size_t n) {
  const double h = 0.5 * static_cast<double>(n);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double unit_ball_volume(std::size_t n) {
  return unit_sphere_area(n) / static_cast<double>(n);
}

}  // namespace muck
