// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "muck/error.hpp"
#include "runner/config.hpp"
#include "runner/runner.hpp"

int main(int argc, char** argv) {
  using namespace muck::cli;

  CLI::App app{"muck: experiments on singular densities"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");

  std::string config_path;
  Overrides ov;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t workers = 0;
  std::string out_dir;
  run->add_option("config", config_path, "Path to the experiment config")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the seed (unsigned 64-bit)");
  auto* samples_opt = run->add_option("--samples", samples, "Override the Monte Carlo sample count");
  run->add_option("--workers", workers, "Worker threads (0 = all cores); never changes results");
  auto* out_opt = run->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }
  if (*seed_opt) ov.seed = seed;
  if (*samples_opt) ov.samples = samples;
  if (*out_opt) ov.out_dir = out_dir;

  ExperimentConfig config;
  try {
    config = load_config(config_path, ov);
  } catch (const ConfigError& e) {
    if (e.line() > 0)
      std::fprintf(stderr, "%s:%zu: error: %s\n", config_path.c_str(), e.line(), e.what());
    else
      std::fprintf(stderr, "%s: error: %s\n", config_path.c_str(), e.what());
    return kExitError;
  }

  try {
    const RunResult result = run_experiment(config, workers);
    write_outputs(result, config.out_dir);
    std::printf("%s\n", result.summary.c_str());
    std::printf("wrote %s\n", (config.out_dir / "report.json").string().c_str());
    return result.exit_code;
  } catch (const muck::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(muck::to_string(e.code())).c_str(), e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return kExitError;
}
