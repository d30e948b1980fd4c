// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "muck/density.hpp"
#include "muck/geometry.hpp"
#include "muck/integrate.hpp"

namespace muck {

/// (avg_B rho) * (avg_B rho^{-1/(p-1)})^{p-1} on one ball. Hoelder's
/// inequality forces product >= 1; A_p asks for a uniform upper bound.
struct ApProduct {
  Ball ball;
  double p = 2.0;
  MassEstimate avg_rho;   // mass / |B|
  MassEstimate avg_dual;  // dual mass / |B|
  double product = 0.0;
  double std_error = 0.0;  // propagated from both averages
};

struct SamplingBudget {
  std::size_t samples = 100'000;
  std::uint64_t seed = 1;
  MassOptions options{};
};

/// Throws Errc::DualNonIntegrable when the dual weight is not locally
/// integrable (the message names the offending exponent).
ApProduct ap_product(const Density& d, const Ball& b, double p,
                     const SamplingBudget& budget);

/// Balls over which the A_p product is maximised.
struct BallFamily {
  std::vector<Point> centers;
  std::vector<double> radii;  // increasing

  std::size_t size() const noexcept { return centers.size() * radii.size(); }
  Ball ball(std::size_t i) const;  // center-major order

  /// Singular centers, their perturbations c + 10^k * eps * e_1
  /// (k = 0..6, eps = 1e-6), and an 8-point far-field set; radii 2^j for
  /// j in [j_min, j_max].
  static BallFamily standard(const Density& d, int j_min = -6, int j_max = 12);

  /// Balls centred at the singular centers only (the origin when the
  /// density has none).
  static BallFamily at_singularities(const Density& d, int j_min, int j_max);
};

struct ApScanEntry {
  Ball ball;
  std::optional<ApProduct> result;  // empty when the product is unbounded
  std::string unbounded_reason;
};

struct ApScanReport {
  double p = 2.0;
  std::vector<ApScanEntry> entries;  // family order
  double sup_product = 0.0;
  std::optional<Ball> argmax;
  std::size_t unbounded_balls = 0;
  /// sup over balls with radius <= R_max / 1000 versus the full sup.
  double early_sup = 0.0;
  /// Empirical A_p verdict: an unbounded product on some ball, or a
  /// running sup that at least doubles over the last three radius decades.
  bool violated = false;
};

ApScanReport estimate_ap_constant(const Density& d, double p,
                                  const BallFamily& family,
                                  const SamplingBudget& budget);

/// rho(2B) / rho(B) against 2^{np} C^p.
struct DoublingReport {
  Ball ball;
  double ratio = 0.0;
  double std_error = 0.0;
  double bound = 0.0;  // 2^{np} C^p
  bool within_bound = false;
};

DoublingReport doubling_ratio(const Density& d, const Ball& b, double p,
                              double ap_constant, const SamplingBudget& budget);

struct SubsetScanPoint {
  double theta = 0.0;
  double volume_ratio = 0.0;  // |E| / |B|
  double mass_ratio = 0.0;    // rho(E) / rho(B)
  double mass_ratio_std_error = 0.0;
  /// |E|/|B| <= C (rho(E)/rho(B))^{1/p}; empty when no C was supplied.
  std::optional<bool> lower_bound_holds;
};

struct SubsetScanReport {
  Ball ball;
  std::vector<SubsetScanPoint> points;
  /// log(mass_ratio) = log C~ + gamma log(volume_ratio) fitted on theta <= 1/2.
  std::optional<double> gamma_raw;
  /// min(gamma_raw, 1): no density admits an exponent above 1, and a
  /// smaller exponent keeps the inequality valid on every shell.
  std::optional<double> gamma;
  /// Smallest C~ with mass_ratio <= C~ volume_ratio^gamma on every point.
  std::optional<double> c_tilde;
};

/// E_theta = Shell(center, (1 - theta) R, R) for each theta in (0, 1).
/// `ap_constant` and `p`, when given, enable the lower-bound check.
SubsetScanReport subset_ratio_scan(const Density& d, const Ball& b,
                                   const std::vector<double>& thetas,
                                   const SamplingBudget& budget,
                                   std::optional<double> ap_constant = {},
                                   double p = 2.0);

}  // namespace muck
