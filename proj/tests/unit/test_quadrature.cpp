// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "muck/quadrature.hpp"

using namespace muck;

TEST_SUITE("quadrature") {
  TEST_CASE("Kronrod rule is exact for low-degree polynomials") {
    for (int k = 0; k <= 22; ++k) {
      const auto r = gauss_kronrod15([k](double t) { return std::pow(t, k); }, 0.0, 2.0);
      CHECK(r.value == doctest::Approx(std::pow(2.0, k + 1) / (k + 1)).epsilon(1e-13));
    }
  }

  TEST_CASE("error estimate vanishes where Gauss is already exact") {
    const auto r = gauss_kronrod15([](double t) { return t * t * t; }, -1.0, 3.0);
    CHECK(r.err < 1e-12);
  }

  TEST_CASE("adaptive integration of smooth and peaked functions") {
    const auto s = integrate_adaptive([](double t) { return std::sin(t); }, 0.0, std::numbers::pi);
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
    const auto p = integrate_adaptive([](double t) { return 1e-4 / (1e-8 + (t - 0.3) * (t - 0.3)); },
                                      0.0, 1.0);
    CHECK(p.converged);
    const double exact = 1e-4 / 1e-4 * (std::atan(0.7 / 1e-4) + std::atan(0.3 / 1e-4));
    CHECK(p.value == doctest::Approx(exact).epsilon(1e-8));
  }

  TEST_CASE("budget exhaustion is reported") {
    const auto r = integrate_adaptive([](double t) { return std::pow(t, -0.999); }, 0.0, 1.0,
                                      1e-14, 1e-14, 20);
    CHECK_FALSE(r.converged);
    CHECK(r.panels <= 20);
  }
}
