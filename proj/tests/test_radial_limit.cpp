// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "bbspectra/radial.hpp"
#include "bbspectra/xcheck.hpp"

using namespace bbspectra;

TEST_CASE("unit ball radius") {
  CHECK(unit_ball_radius(2) == doctest::Approx(0.5641895835477563).epsilon(1e-14));
  CHECK(unit_ball_radius(3) == doctest::Approx(0.6203504908994001).epsilon(1e-14));
  CHECK(unit_ball_radius(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("limit eigenvalue matches the Bessel matching oracle (N=2)") {
  const RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  const double oracle = xcheck::limit_eigenvalue_2d(1.0, 1.0);
  CHECK(std::abs(p.lambda0 - oracle) / oracle <= 1e-6);
  // Frozen oracle value, independently computed from the series identity.
  CHECK(oracle == doctest::Approx(8.190277132365617).epsilon(1e-9));
}

TEST_CASE("limit eigenvalue matches the elementary matching identity (N=3)") {
  const RadialProfile p = solve_limit_eigen(3, 1.0, 1.0, 0.0);
  const double oracle = xcheck::limit_eigenvalue_3d(1.0, 1.0);
  CHECK(std::abs(p.lambda0 - oracle) / oracle <= 1e-6);
  CHECK(oracle == doctest::Approx(14.426069219689955).epsilon(1e-9));
}

TEST_CASE("limit eigenvalue sits below the favorable-ball Dirichlet bound") {
  const double r0 = unit_ball_radius(2);
  const double j01 = xcheck::first_zero_j0();
  CHECK(j01 == doctest::Approx(2.404825557695773).epsilon(1e-12));
  const RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  CHECK(p.lambda0 < j01 * j01 / (1.0 * r0 * r0));
}

TEST_CASE("limit eigenvalue grows with the hostile density") {
  const double l1 = solve_limit_eigen(2, 1.0, 1.0, 0.0).lambda0;
  const double l4 = solve_limit_eigen(2, 1.0, 4.0, 0.0).lambda0;
  CHECK(l4 > l1);
}

TEST_CASE("profile invariants: positivity, monotonicity, matching, normalization") {
  const RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  CHECK(p.match_defect <= 1e-11);  // 10x the bisection tolerance, with margin
  CHECK(p.norm_tag == Normalization::L2Domain);

  double wmin = 1e300;
  for (double v : p.w) wmin = std::min(wmin, v);
  CHECK(wmin > 0.0);
  for (std::size_t i = 1; i < p.w.size(); ++i) CHECK(p.w[i] < p.w[i - 1]);
  for (std::size_t i = 1; i < p.dw.size(); ++i) CHECK(p.dw[i] < 0.0);

  // L2(R^2) normalization: recompute by trapezoid as an independent check.
  double integral = 0.0;
  for (std::size_t i = 1; i < p.r.size(); ++i) {
    const double f1 = p.w[i] * p.w[i] * p.r[i];
    const double f0 = p.w[i - 1] * p.w[i - 1] * p.r[i - 1];
    integral += 0.5 * (f0 + f1) * (p.r[i] - p.r[i - 1]);
  }
  integral *= 2.0 * M_PI;
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("weighted normalization tag") {
  RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  p.normalize(Normalization::WeightedMass);
  // Per-leg trapezoid with the leg's constant weight (integrand jumps at r0).
  double integral = 0.0;
  for (std::size_t i = 1; i < p.r.size(); ++i) {
    const double m = i <= p.i_r0 ? 1.0 : -1.0;
    integral += M_PI * m *
                (p.w[i - 1] * p.w[i - 1] * p.r[i - 1] + p.w[i] * p.w[i] * p.r[i]) *
                (p.r[i] - p.r[i - 1]);
  }
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("lambda0 is stable under radial grid doubling") {
  RadialOptions coarse, fine;
  coarse.steps_per_scale = 2000;
  fine.steps_per_scale = 4000;
  const double a = solve_limit_eigen(2, 1.0, 1.0, 0.0, coarse).lambda0;
  const double b = solve_limit_eigen(2, 1.0, 1.0, 0.0, fine).lambda0;
  CHECK(std::abs(a - b) / b <= 1e-8);
}

TEST_CASE("finite-ball eigenvalue: decreasing in R, above lambda0, Bessel cross-check") {
  const RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  const double delta = 1.0 / std::sqrt(p.lambda0);
  double prev = 1e300;
  for (int k = 2; k <= 12; k += 2) {
    const double R = p.r0 + k * delta;
    const double lamR = lambda_finite_ball(2, 1.0, 1.0, R);
    CHECK(lamR > p.lambda0);
    CHECK(lamR < prev);
    prev = lamR;
    const double oracle = xcheck::finite_ball_eigenvalue_2d(1.0, 1.0, R);
    CHECK(lamR == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("finite ball close to r0: approaches the favorable Dirichlet value") {
  // Thin hostile ring: Lambda(R) within a few percent of the Dirichlet
  // eigenvalue of the favorable ball itself.
  const double r0 = unit_ball_radius(2);
  const double j01 = xcheck::first_zero_j0();
  const double dirichlet = j01 * j01 / (r0 * r0);
  const double lam = lambda_finite_ball(2, 1.0, 1.0, r0 * 1.02);
  CHECK(lam > 0.8 * dirichlet);
  CHECK(lam < dirichlet);
}

TEST_CASE("lambda_finite_ball rejects R <= r0") {
  CHECK_THROWS_AS(lambda_finite_ball(2, 1.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("gap rate fit") {
  SUBCASE("synthetic log-linear data is fitted exactly") {
    const double c = 3.7, lam0 = 5.0;
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < 6; ++i) {
      const double R = 0.1 * (1 + i);  // gaps O(1): no cancellation in lam - lam0
      samples.push_back({R, lam0 + std::exp(-c * R)});
    }
    const GapRateFit fit = fit_gap_rate(samples, lam0);
    CHECK(fit.slope == doctest::Approx(-c).epsilon(1e-10));
    for (double s : fit.pair_slopes) CHECK(s == doctest::Approx(-c).epsilon(1e-10));
  }
  SUBCASE("two samples are rejected") {
    std::vector<std::pair<double, double>> samples{{1.0, 6.0}, {2.0, 5.5}};
    CHECK_THROWS_WITH_AS(fit_gap_rate(samples, 5.0),
                         "resolution exceeded: fewer than 4 samples above the noise floor",
                         std::runtime_error);
  }
  SUBCASE("self-consistent rate within 5% of -2 sqrt(lambda0 munder)") {
    const RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
    const double delta = 1.0 / std::sqrt(p.lambda0 * p.munder);
    std::vector<std::pair<double, double>> samples;
    for (int k = 2; k <= 10; ++k) {
      const double R = p.r0 + k * delta;
      samples.push_back({R, lambda_finite_ball(2, 1.0, 1.0, R)});
    }
    const GapRateFit fit = fit_gap_rate(samples, p.lambda0);
    const double target = -2.0 * std::sqrt(p.lambda0 * p.munder);
    CHECK(std::abs(fit.slope - target) / std::abs(target) <= 0.05);
  }
}

TEST_CASE("decay rate") {
  SUBCASE("synthetic pure exponential profile is exact") {
    RadialProfile p;
    p.dim = 2;
    p.lambda0 = 4.0;
    p.munder = 1.0;
    p.r0 = 0.5;
    p.R = 8.0;
    const double rate = -2.0;  // = -sqrt(lambda0 munder)
    const int n = 2001;
    p.i_r0 = 100;
    for (int i = 0; i < n; ++i) {
      const double r = i * (p.R / (n - 1));
      p.r.push_back(r);
      p.w.push_back(std::exp(rate * r) / std::sqrt(std::max(r, 1e-10)));
      p.dw.push_back(0.0);
    }
    CHECK(decay_rate(p) == doctest::Approx(rate).epsilon(1e-6));
  }
  SUBCASE("solver profile decays at -sqrt(lambda0 munder), N=2") {
    const RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
    const double target = -std::sqrt(p.lambda0 * p.munder);
    CHECK(std::abs(decay_rate(p) - target) / std::abs(target) <= 0.01);
  }
  SUBCASE("solver profile decays at -sqrt(lambda0 munder), N=3") {
    const RadialProfile p = solve_limit_eigen(3, 1.0, 1.0, 0.0);
    const double target = -std::sqrt(p.lambda0 * p.munder);
    CHECK(std::abs(decay_rate(p) - target) / std::abs(target) <= 0.01);
  }
}

TEST_CASE("profile JSON summary carries the required fields") {
  const RadialProfile p = solve_limit_eigen(2, 2.0, 3.0, 0.0);
  const std::string j = profile_summary_json(p);
  CHECK(j.find("\"N\": 2") != std::string::npos);
  CHECK(j.find("lambda0") != std::string::npos);
  CHECK(j.find("r0") != std::string::npos);
}
