// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "muck/density.hpp"
#include "muck/geometry.hpp"
#include "muck/integrate.hpp"

namespace muck::cli {

using Json = nlohmann::ordered_json;

/// A configuration problem located in the source text (line 0 = unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Command-line values that take precedence over the file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::filesystem::path> out_dir;
};

enum class Experiment { Mass, ApScan, Doubling, SubsetScan, Homogeneity, Isotropy };

struct FamilySpec {
  std::string kind = "standard";  // standard | singularities | explicit
  int j_min = -6;
  int j_max = 12;
  std::vector<Point> centers;  // explicit only
  std::vector<double> radii;   // explicit only
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Mass;
  std::uint64_t seed = 0;
  std::optional<Density> density;
  std::size_t samples = 100'000;
  std::size_t chunk_size = 8192;
  LineMassOptions quadrature;
  std::filesystem::path out_dir = "muck-out";

  // Experiment parameters; only those relevant to `experiment` are set.
  std::optional<Region> region;
  bool closed_form = true;
  std::optional<Ball> ball;
  double p = 2.0;
  std::optional<double> ap_constant;
  FamilySpec family;
  std::vector<double> thetas;
  Point x1, x2, v1, v2;
  std::vector<double> radii;
  double tol = 0.0;

  /// Every resolved setting (defaults filled in) except the output
  /// directory, which does not influence results.
  Json resolved;
};

std::string_view to_string(Experiment e) noexcept;

/// Parses and validates; all module preconditions are checked here so a
/// bad configuration fails before any computation starts.
ExperimentConfig parse_config(const std::string& text, const Overrides& ov);

ExperimentConfig load_config(const std::filesystem::path& path,
                             const Overrides& ov);

}  // namespace muck::cli
