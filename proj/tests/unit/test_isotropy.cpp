// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "muck/error.hpp"
#include "muck/isotropy.hpp"

using namespace muck;

namespace {

Point random_unit(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> g;
  Point v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = g(gen);
  return v * (1.0 / v.norm());
}

}  // namespace

TEST_SUITE("isotropy") {
  TEST_CASE("lemma_bounds examples") {
    const auto a = lemma_bounds(Point{0.0, 0.0}, Point{0.0, 0.0}, 0.5, 4.0);
    CHECK(a.lower == doctest::Approx(4.0));
    CHECK(a.upper == doctest::Approx(4.0));
    const auto b = lemma_bounds(Point{1.0, 0.0}, Point{0.0, 0.0}, 0.5, 4.0);
    CHECK(b.lower == doctest::Approx(2.0 * (std::sqrt(5.0) - 1.0)));
    CHECK(b.upper == doctest::Approx(2.0 + 2.0 * std::sqrt(3.0)));
    const auto c = lemma_bounds(Point{1.0, 0.0}, Point{0.0, 0.0}, 1e-9, 4.0);
    CHECK(c.lower == doctest::Approx(4.0).epsilon(1e-7));
    CHECK(c.upper == doctest::Approx(4.0).epsilon(1e-7));
  }

  TEST_CASE("lemma_bounds regime") {
    try {
      lemma_bounds(Point{1.0, 0.0}, Point{0.0, 0.0}, 0.5, 1.0);
      FAIL("expected OutsideRegime");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OutsideRegime);
      CHECK(std::string(e.what()).find("outside lemma regime") != std::string::npos);
    }
    CHECK_THROWS_AS(lemma_bounds(Point{0.0}, Point{0.0}, 1.0, 1.0), Error);
    CHECK_THROWS_AS(lemma_bounds(Point{0.0}, Point{0.0}, 0.0, 1.0), Error);
  }

  TEST_CASE("line masses respect the sandwich") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double alphas[] = {0.25, 0.5, 0.75};
    for (int i = 0; i < 200; ++i) {
      const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
      Point x0(n);
      Point x(n);
      for (std::size_t k = 0; k < n; ++k) {
        x0[k] = u(gen);
        x[k] = u(gen);
      }
      const double alpha = alphas[i % 3];
      const double r = distance(x, x0);
      const double R = r + (1000.0 - r) * u01(gen) + 1e-9;
      const auto res = line_mass_with_bounds(Density::radial_power(x0, -alpha), x,
                                             random_unit(gen, n), R);
      REQUIRE(res.bounds);
      CHECK(res.lambda.value >= res.bounds->lower - 1e-6 * res.bounds->upper);
      CHECK(res.lambda.value <= res.bounds->upper + 1e-6 * res.bounds->upper);
    }
  }

  TEST_CASE("bounds only where the lemma applies") {
    CHECK_FALSE(line_mass_with_bounds(Density::radial_power(Point{0.0, 0.0}, 0.5), Point{1.0, 0.0},
                                      Point{1.0, 0.0}, 5.0)
                    .bounds);
    CHECK_FALSE(line_mass_with_bounds(Density::radial_power(Point{0.0, 0.0}, -0.5), Point{3.0, 0.0},
                                      Point{1.0, 0.0}, 2.0)
                    .bounds);
    CHECK_FALSE(line_mass_with_bounds(Density::constant(2, 1.0), Point{3.0, 0.0}, Point{1.0, 0.0}, 2.0)
                    .bounds);
  }

  TEST_CASE("rotation invariance at the singularity") {
    std::mt19937_64 gen(3);
    const auto d = Density::radial_power(Point{1.0, 2.0, 3.0}, -0.6);
    const double ref = line_mass(d, Point{1.0, 2.0, 3.0}, Point{0.0, 0.0, 1.0}, 50.0).value;
    CHECK(ref == doctest::Approx(std::pow(50.0, 0.4) / 0.4).epsilon(1e-9));
    for (int i = 0; i < 16; ++i) {
      const double v = line_mass(d, Point{1.0, 2.0, 3.0}, random_unit(gen, 3), 50.0).value;
      CHECK(v == doctest::Approx(ref).epsilon(1e-9));
    }
  }

  TEST_CASE("lambda is nondecreasing in R") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
    double prev = 0.0;
    for (double R = 0.1; R < 1e4; R *= 1.5) {
      const double v = line_mass(d, Point{-2.0, 0.5}, Point{1.0, 0.0}, R).value;
      CHECK(v >= prev);
      prev = v;
    }
  }

  TEST_CASE("constant density: ratio 1") {
    const auto d = Density::constant(2, 4.0);
    const Ray r1{Point{0.0, 0.0}, Point{1.0, 0.0}};
    const Ray r2{Point{5.0, -3.0}, Point{0.6, 0.8}};
    const auto c = isotropy_ratio_curve(d, r1, r2, default_isotropy_schedule(d, r1, r2));
    for (const auto& p : c.points) {
      CHECK(p.ratio == doctest::Approx(1.0).epsilon(1e-13));
      CHECK_FALSE(p.bracket_low);
    }
    CHECK(c.verdict == IsotropyVerdict::Isotropic);
  }

  TEST_CASE("radial power: ratio inside the bracket at large R") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
    const Ray r1{Point{1.0, 0.0}, Point{0.0, 1.0}};
    const Ray r2{Point{3.0, 0.0}, Point{1.0, 0.0}};
    const auto c = isotropy_ratio_curve(d, r1, r2, {1e2, 1e3, 1e4});
    const auto& last = c.points.back();
    REQUIRE(last.bracket_low);
    CHECK(*last.bracket_low <= last.ratio);
    CHECK(last.ratio <= *last.bracket_high);
    CHECK(std::abs(last.ratio - 1.0) <= 0.05);
    CHECK(c.verdict == IsotropyVerdict::Isotropic);
    double width = 1e300;
    for (const auto& p : c.points) {
      const double w = *p.bracket_high - *p.bracket_low;
      CHECK(w < width);
      width = w;
    }
  }

  TEST_CASE("bracket width shrinks over R = 10^2..10^5") {
    const auto d = Density::radial_power(Point{0.0, 0.0, 0.0}, -0.75);
    const Ray r1{Point{2.0, 0.0, 0.0}, Point{0.0, 0.0, 1.0}};
    const Ray r2{Point{0.0, -1.0, 1.0}, Point{0.0, 1.0, 0.0}};
    const auto c = isotropy_ratio_curve(d, r1, r2, {1e2, 1e3, 1e4, 1e5});
    double width = 1e300;
    for (const auto& p : c.points) {
      REQUIRE(p.bracket_low);
      CHECK(*p.bracket_low <= p.ratio);
      CHECK(p.ratio <= *p.bracket_high);
      CHECK(*p.bracket_high - *p.bracket_low < width);
      width = *p.bracket_high - *p.bracket_low;
    }
  }

  TEST_CASE("observers at the singularity see ratio 1") {
    const auto d = Density::radial_power(Point{1.0, 1.0}, -0.5);
    const Ray r1{Point{1.0, 1.0}, Point{1.0, 0.0}};
    const Ray r2{Point{1.0, 1.0}, Point{-0.6, 0.8}};
    const auto c = isotropy_ratio_curve(d, r1, r2, {10.0, 100.0});
    for (const auto& p : c.points) CHECK(p.ratio == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("exponential density is not isotropic") {
    const auto d = Density::exponential(Point{1.0, 0.0}, 1.0);
    const Ray r1{Point{0.0, 0.0}, Point{1.0, 0.0}};
    const Ray r2{Point{0.0, 0.0}, Point{-1.0, 0.0}};
    const auto c = isotropy_ratio_curve(d, r1, r2, {1.0, 2.0, 4.0, 8.0});
    CHECK(c.verdict == IsotropyVerdict::NotIsotropic);
    CHECK(c.points.back().ratio == doctest::Approx(std::expm1(8.0) / -std::expm1(-8.0)).epsilon(1e-8));
  }

  TEST_CASE("errors") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -1.0);
    const Ray through{Point{-1.0, 0.0}, Point{1.0, 0.0}};
    const Ray miss{Point{0.0, 1.0}, Point{1.0, 0.0}};
    try {
      isotropy_ratio_curve(d, through, miss, {10.0});
      FAIL("expected LambdaUndefined");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::LambdaUndefined);
    }
    CHECK_THROWS_AS(isotropy_ratio_curve(d, miss, miss, {}), Error);
    CHECK_THROWS_AS(isotropy_ratio_curve(d, miss, miss, {2.0, 1.0}), Error);
    CHECK_THROWS_AS(isotropy_ratio_curve(d, Ray{Point{0.0, 1.0}, Point{1.0, 1.0}}, miss, {1.0}), Error);
  }

  TEST_CASE("default schedule scales with the observers") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
    const auto s = default_isotropy_schedule(d, Ray{Point{3.0, 0.0}, Point{1.0, 0.0}},
                                             Ray{Point{1.0, 0.0}, Point{1.0, 0.0}});
    REQUIRE(s.size() == 4);
    CHECK(s.front() == doctest::Approx(30.0));
    CHECK(s.back() == doctest::Approx(3e4));
  }
}
