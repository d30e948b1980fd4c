// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "muck/density.hpp"
#include "muck/geometry.hpp"
#include "muck/point.hpp"
#include "muck/rng.hpp"

namespace muck {

/// Ball (inner == 0) or spherical shell {inner <= |y - center| < outer}.
struct Region {
  Point center;
  double inner = 0.0;
  double outer = 1.0;

  static Region ball(const Ball& b);
  static Region shell(Point center, double inner, double outer);

  std::size_t dim() const noexcept { return center.dim(); }
  bool is_ball() const noexcept { return inner == 0.0; }
  double volume() const;
  bool contains(const Point& y) const noexcept;
};

enum class Method { ClosedForm, MonteCarlo, StratifiedMC, Quadrature };
std::string_view to_string(Method m) noexcept;

struct MassEstimate {
  double value = 0.0;
  double std_error = 0.0;  // Monte Carlo standard error; 0 otherwise
  double err_bound = 0.0;  // quadrature error bound; 0 otherwise
  std::size_t n_samples = 0;
  std::size_t resampled = 0;  // draws that landed on the singular set
  Method method = Method::ClosedForm;
};

struct MassOptions {
  /// Worker threads; 0 means hardware concurrency. Never affects results.
  std::size_t workers = 1;
  /// Samples per chunk. Chunk seeds are derived from (seed, stratum, chunk).
  std::size_t chunk_size = 8192;
  /// Use the analytic mass when one exists.
  bool allow_closed_form = true;
};

inline constexpr std::size_t kMinSamples = 100;

/// Direction uniform on S^{n-1}.
Point uniform_direction(std::size_t dim, Xoshiro256pp& rng);

/// Point uniform in the region.
Point sample_uniform(const Region& r, Xoshiro256pp& rng);

/// Exact mass of a ball or shell, when closed_form_ball_mass covers it.
std::optional<double> closed_form_mass(const Density& d, const Region& r);

/// Unbiased estimate of the mass of `r` under `d`.
///
/// Singular points get a cap stratum of radius
///   min(outer radius, half the minimum distance between singular centers)
/// in which the radius about the singularity is drawn with density
/// proportional to t^{n-1+beta}, so the sampled integrand is bounded.
/// Singular hyperplanes and spheres get a slab stratum whose distance
/// coordinate is drawn with density proportional to s^beta. Whatever the
/// strata do not cover is sampled uniformly. Samples are processed in
/// fixed-size chunks merged in chunk order, so results are bit-identical
/// for any worker count.
MassEstimate mass(const Density& d, const Region& r, std::size_t n_samples,
                  std::uint64_t seed, const MassOptions& opts = {});

/// Two masses estimated from one stream of random numbers (common random
/// numbers). When both regions get the same stratum layout, every sample
/// is evaluated in both regions and the covariance of the two estimates is
/// reported; otherwise the estimates are still computed with the shared
/// seed but the covariance is left at zero.
struct PairEstimate {
  MassEstimate first;
  MassEstimate second;
  double covariance = 0.0;
  bool paired = false;

  double ratio() const noexcept { return first.value / second.value; }
  /// First-order (delta method) standard error of first / second.
  double ratio_std_error() const noexcept;
};

PairEstimate mass_pair(const Density& d, const Region& r1, const Region& r2,
                       std::size_t n_samples, std::uint64_t seed,
                       const MassOptions& opts = {});

struct LineMassOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_panels = 100'000;
};

/// lambda(x, v, R) = int_0^R rho(x + t v) dt by adaptive Gauss-Kronrod.
/// Parameters where the ray meets the singular set are located exactly and
/// the adjacent panels are integrated after the substitution
/// u = (t - t_s)^{1 + e}, which removes an endpoint singularity of order e.
/// Throws Errc::LambdaUndefined when some such order is <= -1.
MassEstimate line_mass(const Density& d, const Point& x, const Point& v,
                       double R, const LineMassOptions& opts = {});

}  // namespace muck
