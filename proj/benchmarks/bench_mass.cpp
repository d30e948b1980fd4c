// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <cmath>

#include "muck/ap.hpp"
#include "muck/integrate.hpp"
#include "muck/isotropy.hpp"

using namespace muck;

namespace {

void BM_StratifiedMass(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = Density::radial_power(Point::zero(n), -0.5);
  Point c = Point::zero(n);
  c[0] = 0.7;
  const auto region = Region::ball(Ball(c, 1.0));
  MassOptions opts;
  opts.allow_closed_form = false;
  opts.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mass(d, region, 100'000, 1, opts));
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_StratifiedMass)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MassWorkers(benchmark::State& state) {
  const auto d = Density::product({{Point{0.0, 0.0, 0.0}, -1.0}, {Point{1.0, 0.0, 0.0}, 0.5}});
  const auto region = Region::ball(Ball(Point{0.3, 0.2, 0.0}, 4.0));
  MassOptions opts;
  opts.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mass(d, region, 1'000'000, 7, opts));
  }
  state.SetItemsProcessed(state.iterations() * 1'000'000);
}
BENCHMARK(BM_MassWorkers)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LineMass(benchmark::State& state) {
  const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
  const double R = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(line_mass(d, Point{1.0, 0.0}, Point{0.0, 1.0}, R));
  }
}
BENCHMARK(BM_LineMass)->DenseRange(2, 6, 2);

void BM_ApProduct(benchmark::State& state) {
  const auto d = Density::radial_power(Point{0.0, 0.0}, -1.0);
  SamplingBudget b;
  b.samples = 50'000;
  b.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ap_product(d, Ball(Point{0.5, 0.5}, 1.0), 2.0, b));
  }
}
BENCHMARK(BM_ApProduct)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
