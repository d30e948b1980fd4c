// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "muck/error.hpp"
#include "muck/integrate.hpp"
#include "oracles.hpp"

using namespace muck;

namespace {

const double kPi = std::numbers::pi;

oracle::Vec vec(const Point& p) { return {p.coords().begin(), p.coords().end()}; }

// |a - b| within k joint standard errors (plus a relative floor).
bool agree(double a, double sa, double b, double sb, double k = 3.0, double rel = 0.0) {
  return std::abs(a - b) <= k * std::hypot(sa, sb) + rel * std::abs(b);
}

MassOptions mc_only() {
  MassOptions o;
  o.allow_closed_form = false;
  return o;
}

}  // namespace

TEST_SUITE("integrate") {
  TEST_CASE("sample_uniform: 1-D ball is symmetric") {
    Xoshiro256pp g(1);
    const Region r = Region::ball(Ball(Point{0.0}, 1.0));
    const int N = 100000;
    double s = 0.0;
    for (int i = 0; i < N; ++i) {
      const Point x = sample_uniform(r, g);
      REQUIRE(std::abs(x[0]) < 1.0);
      s += x[0];
    }
    CHECK(std::abs(s / N) <= 3.0 / std::sqrt(static_cast<double>(N)));
  }

  TEST_CASE("sample_uniform: shell support") {
    Xoshiro256pp g(2);
    const Region r = Region::shell(Point{0.0, 0.0}, 1.0, 2.0);
    for (int i = 0; i < 50000; ++i) {
      const double t = sample_uniform(r, g).norm();
      REQUIRE(t >= 1.0);
      REQUIRE(t <= 2.0);
    }
  }

  TEST_CASE("sample_uniform: E|x|^2 in the unit 3-ball") {
    const double expected =
        oracle::graded_midpoint([](double t) { return t * t * 3.0 * t * t; }, 0.0, 1.0, 100000);
    CHECK(expected == doctest::Approx(0.6).epsilon(1e-8));
    Xoshiro256pp g(3);
    const Region r = Region::ball(Ball(Point{0.0, 0.0, 0.0}, 1.0));
    const int N = 200000;
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < N; ++i) {
      const double v = sample_uniform(r, g).norm2();
      s += v;
      s2 += v * v;
    }
    const double mean = s / N;
    const double se = std::sqrt((s2 / N - mean * mean) / N);
    CHECK(std::abs(mean - expected) <= 4.0 * se);
  }

  TEST_CASE("region validation and volume") {
    CHECK_THROWS_AS(Region::shell(Point{0.0}, 2.0, 1.0), Error);
    CHECK_THROWS_AS(Region::shell(Point{0.0}, -1.0, 1.0), Error);
    CHECK(Region::shell(Point{0.0, 0.0}, 1.0, 2.0).volume() == doctest::Approx(3.0 * kPi));
  }

  TEST_CASE("mass examples") {
    const auto c = mass(Density::constant(2, 1.0), Region::ball(Ball(Point{0.0, 0.0}, 1.0)),
                        10000, 1, mc_only());
    CHECK(std::abs(c.value - kPi) <= 3.0 * c.std_error + 1e-12);
    const auto r = mass(Density::radial_power(Point{0.0, 0.0}, -1.0),
                        Region::ball(Ball(Point{0.0, 0.0}, 1.0)), 10000, 1, mc_only());
    CHECK(std::abs(r.value - 2.0 * kPi) <= 3.0 * r.std_error + 1e-12);
    const auto cf = mass(Density::radial_power(Point{0.0, 0.0}, -1.0),
                         Region::ball(Ball(Point{0.0, 0.0}, 1.0)), 10000, 1);
    CHECK(cf.method == Method::ClosedForm);
    CHECK(cf.std_error == 0.0);
    CHECK(cf.value == doctest::Approx(2.0 * kPi));
  }

  TEST_CASE("off-centre radial power against plain Monte Carlo") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
    const Ball b(Point{1.0, 0.0}, 0.5);
    const auto m = mass(d, Region::ball(b), 1'000'000, 11);
    CHECK(m.method != Method::ClosedForm);
    const auto ref = oracle::plain_mc_ball(
        [](const oracle::Vec& y) { return std::pow(oracle::norm(y), -0.5); }, {1.0, 0.0}, 0.5,
        10'000'000, 99);
    CHECK(agree(m.value, m.std_error, ref.value, ref.std_error));
  }

  TEST_CASE("unbiased against every closed form") {
    struct Case {
      Density d;
      Region r;
    };
    const Case cases[] = {
        {Density::constant(3, 2.5), Region::ball(Ball(Point{1.0, 2.0, 3.0}, 2.0))},
        {Density::radial_power(Point{0.0, 0.0}, -1.5), Region::ball(Ball(Point{0.0, 0.0}, 3.0))},
        {Density::radial_power(Point{1.0, 1.0, 1.0}, 2.0), Region::ball(Ball(Point{1.0, 1.0, 1.0}, 0.5))},
        {Density::radial_power(Point{0.0}, -0.7), Region::shell(Point{0.0}, 0.5, 2.0)},
        {Density::radial_power(Point{0.0, 0.0, 0.0, 0.0}, -3.2), Region::ball(Ball(Point{0.0, 0.0, 0.0, 0.0}, 1.0))},
        {Density::exponential(Point{1.0}, 1.0), Region::ball(Ball(Point{0.3}, 2.0))},
        {Density::exponential(Point{0.6, 0.8}, 1.3), Region::ball(Ball(Point{0.5, -1.0}, 1.5))},
        {Density::exponential(Point{0.0, 0.0, 1.0}, -0.5), Region::ball(Ball(Point{0.0, 1.0, 0.0}, 2.0))},
    };
    for (const auto& c : cases) {
      const auto exact = closed_form_mass(c.d, c.r);
      REQUIRE(exact);
      const auto m = mass(c.d, c.r, 1'000'000, 5, mc_only());
      INFO(c.d.describe());
      CHECK(std::abs(m.value - *exact) <= std::max(3.0 * m.std_error, 1e-3 * *exact));
    }
  }

  TEST_CASE("n-D exponential closed form against plain Monte Carlo") {
    const auto d = Density::exponential(Point{0.6, 0.8}, 1.3);
    const Ball b(Point{0.5, -1.0}, 1.5);
    const double exact = *closed_form_ball_mass(d, b);
    const auto ref = oracle::plain_mc_ball(
        [](const oracle::Vec& y) { return std::exp(1.3 * (0.6 * y[0] + 0.8 * y[1])); },
        {0.5, -1.0}, 1.5, 4'000'000, 3);
    CHECK(agree(exact, 0.0, ref.value, ref.std_error));
  }

  TEST_CASE("hyperplane slabs against 1-D quadrature") {
    // 2-D: the chord at signed distance s has length 2 sqrt(R^2 - (s - c)^2)
    for (double off : {0.0, 0.3, -0.9}) {
      const auto d = Density::distance_power(GeometricSet::hyperplane(Point{1.0, 0.0}, off), -0.5);
      const auto m = mass(d, Region::ball(Ball(Point{0.0, 0.0}, 1.0)), 1'000'000, 2);
      auto f = [&](double s) { return std::pow(std::abs(s - off), -0.5) * 2.0 * std::sqrt(std::max(0.0, 1.0 - s * s)); };
      const double ref = oracle::graded_midpoint_both(f, -1.0, off, 400000, 4.0) +
                         oracle::graded_midpoint_both(f, off, 1.0, 400000, 4.0);
      INFO("offset " << off);
      CHECK(std::abs(m.value - ref) <= 3.0 * m.std_error + 1e-6 * ref);
    }
    // 3-D: disk area pi (R^2 - s^2)
    const auto d3 = Density::distance_power(GeometricSet::hyperplane(Point{0.0, 0.0, 1.0}, 0.0), -0.8);
    const auto m3 = mass(d3, Region::ball(Ball(Point{0.0, 0.0, 0.0}, 2.0)), 1'000'000, 2);
    const double ref3 = 2.0 * oracle::graded_midpoint(
        [](double s) { return std::pow(s, -0.8) * kPi * (4.0 - s * s); }, 0.0, 2.0, 400000, 10.0);
    CHECK(std::abs(m3.value - ref3) <= 3.0 * m3.std_error + 1e-6 * ref3);
  }

  TEST_CASE("sphere shells against 1-D quadrature") {
    // ball centred on the sphere centre: 2 pi int_0^2 |t - 1|^beta t dt
    const auto d = Density::distance_power(GeometricSet::sphere(Point{0.0, 0.0}, 1.0), -0.6);
    const auto m = mass(d, Region::ball(Ball(Point{0.0, 0.0}, 2.0)), 1'000'000, 4);
    auto f = [](double t) { return std::pow(std::abs(t - 1.0), -0.6) * 2.0 * kPi * t; };
    const double ref = oracle::graded_midpoint_both(f, 0.0, 1.0, 400000, 6.0) +
                       oracle::graded_midpoint_both(f, 1.0, 2.0, 400000, 6.0);
    CHECK(std::abs(m.value - ref) <= 3.0 * m.std_error + 1e-6 * ref);

    // off-centre ball: plain Monte Carlo oracle (beta > -1/2 keeps its variance finite)
    const auto d2 = Density::distance_power(GeometricSet::sphere(Point{0.0, 0.0}, 1.0), -0.4);
    const Ball b(Point{0.8, 0.3}, 0.7);
    const auto m2 = mass(d2, Region::ball(b), 1'000'000, 4);
    const auto ref2 = oracle::plain_mc_ball(
        [](const oracle::Vec& y) { return std::pow(std::abs(oracle::norm(y) - 1.0), -0.4); },
        {0.8, 0.3}, 0.7, 4'000'000, 8);
    CHECK(agree(m2.value, m2.std_error, ref2.value, ref2.std_error));
  }

  TEST_CASE("products and point sets against plain Monte Carlo") {
    const auto prod = Density::product({{Point{0.0, 0.0}, -0.6}, {Point{1.0, 0.0}, -0.4}});
    const auto m = mass(prod, Region::ball(Ball(Point{0.5, 0.0}, 1.5)), 1'000'000, 6);
    const auto ref = oracle::plain_mc_ball(
        [](const oracle::Vec& y) {
          return std::pow(oracle::dist(y, {0.0, 0.0}), -0.6) * std::pow(oracle::dist(y, {1.0, 0.0}), -0.4);
        },
        {0.5, 0.0}, 1.5, 4'000'000, 12);
    CHECK(agree(m.value, m.std_error, ref.value, ref.std_error));

    const auto ps = Density::distance_power(
        GeometricSet::point_set({Point{0.0, 0.0, 0.0}, Point{0.0, 1.0, 0.0}}), -1.2);
    const auto mp = mass(ps, Region::ball(Ball(Point{0.0, 0.5, 0.0}, 1.0)), 1'000'000, 6);
    const auto refp = oracle::plain_mc_ball(
        [](const oracle::Vec& y) {
          return std::pow(std::min(oracle::dist(y, {0, 0, 0}), oracle::dist(y, {0, 1, 0})), -1.2);
        },
        {0.0, 0.5, 0.0}, 1.0, 4'000'000, 13);
    CHECK(agree(mp.value, mp.std_error, refp.value, refp.std_error));
  }

  TEST_CASE("stratification reduces the error of singular integrands") {
    const auto d = Density::radial_power(Point{0.0, 0.0, 0.0}, -2.4);
    const auto m = mass(d, Region::ball(Ball(Point{0.2, 0.0, 0.0}, 1.0)), 200'000, 7);
    CHECK(m.method == Method::StratifiedMC);
    CHECK(std::isfinite(m.std_error));
    CHECK(m.std_error < 0.01 * m.value);
  }

  TEST_CASE("seed determinism and worker independence") {
    const auto d = Density::product({{Point{0.0, 0.0}, -1.0}, {Point{2.0, 0.0}, 0.5}});
    const Region r = Region::ball(Ball(Point{1.0, 0.5}, 3.0));
    MassOptions one;
    one.workers = 1;
    MassOptions many;
    many.workers = 6;
    const auto a = mass(d, r, 100'000, 77, one);
    const auto b = mass(d, r, 100'000, 77, many);
    const auto c = mass(d, r, 100'000, 77, one);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.value == c.value);
    const auto e = mass(d, r, 100'000, 78, one);
    CHECK(a.value != e.value);
  }

  TEST_CASE("additivity over shells") {
    const auto d = Density::radial_power(Point{0.3, 0.0}, -1.2);
    const Point c{0.0, 0.0};
    const auto whole = mass(d, Region::ball(Ball(c, 2.0)), 400'000, 1);
    const auto inner = mass(d, Region::shell(c, 0.0, 1.0), 400'000, 2);
    const auto outer = mass(d, Region::shell(c, 1.0, 2.0), 400'000, 3);
    CHECK(agree(whole.value, whole.std_error, inner.value + outer.value,
                std::hypot(inner.std_error, outer.std_error)));
  }

  TEST_CASE("input validation") {
    const auto d = Density::constant(2, 1.0);
    CHECK_THROWS_AS(mass(d, Region::ball(Ball(Point{0.0, 0.0}, 1.0)), 99, 1), Error);
    CHECK_THROWS_AS(mass(d, Region::ball(Ball(Point{0.0}, 1.0)), 1000, 1), Error);
  }

  TEST_CASE("common random numbers") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
    auto independent = [](const PairEstimate& e) {
      return e.ratio() * std::hypot(e.first.std_error / e.first.value,
                                    e.second.std_error / e.second.value);
    };
    // moderate radius: pairing already helps
    {
      const auto e = mass_pair(d, Region::ball(Ball(Point{1.0, 0.0}, 16.0)),
                               Region::ball(Ball(Point{-1.0, 0.0}, 16.0)), 200'000, 5);
      CHECK(e.covariance > 0.0);
      CHECK(e.ratio_std_error() < independent(e));
    }
    const Region r1 = Region::ball(Ball(Point{1.0, 0.0}, 128.0));
    const Region r2 = Region::ball(Ball(Point{-1.0, 0.0}, 128.0));
    const auto ab = mass_pair(d, r1, r2, 200'000, 5);
    const auto ba = mass_pair(d, r2, r1, 200'000, 5);
    CHECK(ab.paired);
    CHECK(ab.covariance > 0.0);
    // with R much larger than the observer gap the paired ratio is far tighter
    CHECK(ab.ratio_std_error() < 0.5 * independent(ab));
    // swapping roles reuses the same cloud
    CHECK(ab.first.value == ba.second.value);
    CHECK(ab.second.value == ba.first.value);
    CHECK(ab.ratio() * ba.ratio() == doctest::Approx(1.0).epsilon(1e-14));
    // each marginal agrees with a standalone estimate
    const auto solo = mass(d, r1, 200'000, 9);
    CHECK(agree(ab.first.value, ab.first.std_error, solo.value, solo.std_error));
  }

  TEST_CASE("translated pairs stay unbiased for every singular set") {
    struct Case {
      std::string name;
      Density d;
      Point c1, c2;
      double R;
    };
    const std::vector<Case> cases = {
        {"hyperplane", Density::distance_power(GeometricSet::hyperplane(Point{0.6, 0.8}, 0.5), -0.6),
         Point{0.0, 0.0}, Point{1.5, -0.5}, 3.0},
        {"sphere", Density::distance_power(GeometricSet::sphere(Point{0.0, 0.0, 0.0}, 2.0), -0.5),
         Point{0.5, 0.0, 0.0}, Point{-1.0, 1.0, 0.0}, 2.5},
        {"product", Density::product({{Point{0.0, 0.0}, -1.2}, {Point{3.0, 0.0}, 0.7}}),
         Point{1.0, 0.5}, Point{2.0, -0.5}, 4.0},
        {"point set", Density::distance_power(GeometricSet::point_set({Point{0.0}, Point{2.0}}), -0.7),
         Point{0.3}, Point{1.9}, 1.5},
    };
    for (const auto& c : cases) {
      INFO(c.name);
      const Region r1 = Region::ball(Ball(c.c1, c.R));
      const Region r2 = Region::ball(Ball(c.c2, c.R));
      const auto pr = mass_pair(c.d, r1, r2, 400'000, 21);
      CHECK(pr.paired);
      const auto m1 = mass(c.d, r1, 400'000, 22, mc_only());
      const auto m2 = mass(c.d, r2, 400'000, 23, mc_only());
      CHECK(agree(pr.first.value, pr.first.std_error, m1.value, m1.std_error, 4.0));
      CHECK(agree(pr.second.value, pr.second.std_error, m2.value, m2.std_error, 4.0));
      CHECK(std::isfinite(pr.ratio_std_error()));
    }
  }

  TEST_CASE("nested pairs share one cloud over the larger region") {
    const auto d = Density::radial_power(Point{0.3, 0.0}, -1.0);
    const Ball b(Point{0.0, 0.0}, 1.0);
    const auto pr = mass_pair(d, Region::ball(Ball(b.center, 2.0)), Region::ball(b), 400'000, 3, mc_only());
    CHECK(pr.paired);
    CHECK(pr.covariance > 0.0);
    const auto big = mass(d, Region::ball(Ball(b.center, 2.0)), 400'000, 4, mc_only());
    const auto small = mass(d, Region::ball(b), 400'000, 5, mc_only());
    CHECK(agree(pr.first.value, pr.first.std_error, big.value, big.std_error, 4.0));
    CHECK(agree(pr.second.value, pr.second.std_error, small.value, small.std_error, 4.0));
  }
}

TEST_SUITE("line_mass") {
  const Point e1{1.0, 0.0};

  TEST_CASE("constant density gives c R") {
    const auto m = line_mass(Density::constant(2, 3.0), Point{5.0, 1.0}, Point{0.6, 0.8}, 7.0);
    CHECK(m.method == Method::Quadrature);
    CHECK(m.value == doctest::Approx(21.0).epsilon(1e-14));
    CHECK(m.std_error == 0.0);
  }

  TEST_CASE("radial power examples") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
    for (double R : {0.5, 3.0, 100.0, 1e4}) {
      const auto m = line_mass(d, Point{1.0, 0.0}, e1, R);
      const double exact = 2.0 * (std::sqrt(1.0 + R) - 1.0);
      CHECK(m.value == doctest::Approx(exact).epsilon(1e-9));
      CHECK(m.err_bound <= 1e-8 * m.value + 1e-10);
      const double mid = oracle::graded_midpoint(
          [](double t) { return std::pow(1.0 + t, -0.5); }, 0.0, R, 200000, 2.0);
      CHECK(mid == doctest::Approx(exact).epsilon(1e-6));
      CHECK(line_mass(d, Point{0.0, 0.0}, Point{0.6, -0.8}, R).value ==
            doctest::Approx(2.0 * std::sqrt(R)).epsilon(1e-9));
    }
  }

  TEST_CASE("ray through an interior singularity") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -0.5);
    const auto m = line_mass(d, Point{-1.0, 0.0}, e1, 3.0);
    CHECK(m.value == doctest::Approx(2.0 * (1.0 + std::sqrt(2.0))).epsilon(1e-9));
    const auto steep = Density::radial_power(Point{0.0, 0.0, 0.0}, -0.9);
    const auto m2 = line_mass(steep, Point{0.0, -2.0, 0.0}, Point{0.0, 1.0, 0.0}, 5.0);
    const double exact = (std::pow(2.0, 0.1) + std::pow(3.0, 0.1)) / 0.1;
    CHECK(m2.value == doctest::Approx(exact).epsilon(1e-8));
  }

  TEST_CASE("non-integrable singularities on the ray") {
    const auto d = Density::radial_power(Point{0.0, 0.0}, -1.0);
    try {
      line_mass(d, Point{-1.0, 0.0}, e1, 3.0);
      FAIL("expected LambdaUndefined");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::LambdaUndefined);
    }
    // a miss is fine: int_0^R (1 + t^2)^{-1/2} dt = asinh R
    CHECK(line_mass(d, Point{0.0, 1.0}, e1, 10.0).value ==
          doctest::Approx(std::asinh(10.0)).epsilon(1e-9));
  }

  TEST_CASE("hyperplane crossings") {
    const auto d = Density::distance_power(GeometricSet::hyperplane(Point{1.0, 0.0}, 0.0), -0.5);
    CHECK(line_mass(d, Point{-1.0, 0.0}, e1, 3.0).value ==
          doctest::Approx(2.0 * (1.0 + std::sqrt(2.0))).epsilon(1e-9));
    // oblique: |0.6 t - 1|^{-1/2}
    const double R = 4.0;
    const double exact = (2.0 + 2.0 * std::sqrt(0.6 * R - 1.0)) / 0.6;
    CHECK(line_mass(d, Point{-1.0, 7.0}, Point{0.6, 0.8}, R).value ==
          doctest::Approx(exact).epsilon(1e-9));
    // along the hyperplane itself rho is infinite everywhere
    CHECK_THROWS_AS(line_mass(d, Point{0.0, 0.0}, Point{0.0, 1.0}, 1.0), Error);
  }

  TEST_CASE("sphere tangency has order 2 beta") {
    const Point x{-2.0, 1.0};
    // with s = t - 2 the distance to the circle is s^2 / (hypot(s, 1) + 1)
    auto ref = [&](double beta) {
      auto f = [&](double s) { return std::pow(s * s / (std::hypot(s, 1.0) + 1.0), beta); };
      return 2.0 * oracle::graded_midpoint(f, 0.0, 2.0, 400000, 12.0);
    };
    const auto ok = Density::distance_power(GeometricSet::sphere(Point{0.0, 0.0}, 1.0), -0.4);
    CHECK(line_mass(ok, x, e1, 4.0).value == doctest::Approx(ref(-0.4)).epsilon(1e-6));
    const auto bad = Density::distance_power(GeometricSet::sphere(Point{0.0, 0.0}, 1.0), -0.5);
    CHECK_THROWS_AS(line_mass(bad, x, e1, 4.0), Error);
    // a transversal crossing of the same sphere is fine at -0.5
    CHECK_NOTHROW(line_mass(bad, Point{-2.0, 0.0}, e1, 4.0));
  }

  TEST_CASE("a 1-D ray through the singularity with a near-unit direction") {
    const auto d = Density::radial_power(Point{0.60857989434251003}, -0.75);
    const Point x{4.0929166820454324};
    const Point v{-0.99999999999999989};
    const double r = 4.0929166820454324 - 0.60857989434251003;
    const double R = 298.43940903720073;
    const double exact = 4.0 * (std::pow(r, 0.25) + std::pow(R - r, 0.25));
    CHECK(line_mass(d, x, v, R).value == doctest::Approx(exact).epsilon(1e-8));
  }

  TEST_CASE("products with two singularities on the ray") {
    const auto d = Density::product({{Point{1.0, 0.0}, -0.5}, {Point{2.5, 0.0}, -0.3}});
    // four pieces, each parametrised by the offset from its singular end
    using oracle::graded_midpoint;
    const double ref =
        graded_midpoint([](double s) { return std::pow(s, -0.5) * std::pow(1.5 + s, -0.3); }, 0.0, 1.0, 400000, 6.0) +
        graded_midpoint([](double s) { return std::pow(s, -0.5) * std::pow(1.5 - s, -0.3); }, 0.0, 0.75, 400000, 6.0) +
        graded_midpoint([](double s) { return std::pow(1.5 - s, -0.5) * std::pow(s, -0.3); }, 0.0, 0.75, 400000, 6.0) +
        graded_midpoint([](double s) { return std::pow(1.5 + s, -0.5) * std::pow(s, -0.3); }, 0.0, 3.5, 400000, 6.0);
    CHECK(line_mass(d, Point{0.0, 0.0}, e1, 6.0).value == doctest::Approx(ref).epsilon(1e-6));
  }

  TEST_CASE("exponential along its direction") {
    const auto d = Density::exponential(Point{1.0, 0.0}, 1.0);
    CHECK(line_mass(d, Point{0.0, 3.0}, e1, 5.0).value ==
          doctest::Approx(std::expm1(5.0)).epsilon(1e-10));
  }

  TEST_CASE("input validation") {
    const auto d = Density::constant(2, 1.0);
    CHECK_THROWS_AS(line_mass(d, Point{0.0, 0.0}, Point{1.0, 1.0}, 1.0), Error);
    CHECK_THROWS_AS(line_mass(d, Point{0.0, 0.0}, e1, 0.0), Error);
    CHECK_THROWS_AS(line_mass(d, Point{0.0}, Point{1.0}, 1.0), Error);
  }
}
