// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"

namespace muck::cli {

enum ExitCode : int { kExitVerdict = 0, kExitError = 1, kExitInconclusive = 2 };

struct CsvFile {
  std::string name;
  std::string content;
};

struct RunResult {
  Json report;
  std::vector<CsvFile> csv;
  std::string summary;  // one line for the terminal
  int exit_code = kExitVerdict;
};

/// Runs the configured experiment. `workers` only affects speed.
RunResult run_experiment(const ExperimentConfig& config, std::size_t workers);

/// Writes report.json and the CSV files into `dir` (created if needed).
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

}  // namespace muck::cli
