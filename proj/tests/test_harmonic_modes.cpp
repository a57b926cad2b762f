// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "bbspectra/modes.hpp"
#include "bbspectra/radial.hpp"
#include "bbspectra/xcheck.hpp"

using namespace bbspectra;

namespace {

RadialProfile weighted_profile(int N = 2, double mbar = 1.0, double munder = 1.0,
                               double steps = 2000.0) {
  RadialOptions opts;
  opts.steps_per_scale = steps;
  RadialProfile p = solve_limit_eigen(N, mbar, munder, 0.0, opts);
  p.normalize(Normalization::WeightedMass);
  return p;
}

}  // namespace

TEST_CASE("Laplace-Beltrami eigenvalues") {
  CHECK(laplace_beltrami_eigenvalue(2, 1) == 1.0);
  CHECK(laplace_beltrami_eigenvalue(2, 0) == 0.0);
  CHECK(laplace_beltrami_eigenvalue(3, 2) == 6.0);
  CHECK(laplace_beltrami_eigenvalue(2, 5) == 25.0);
  CHECK_THROWS_AS(laplace_beltrami_eigenvalue(2, -1), std::invalid_argument);
}

TEST_CASE("degree-1 mode reproduces -w' (transmission of the gradient)") {
  const RadialProfile p = weighted_profile();
  const ModeEntry g1 = solve_mode(p, laplace_beltrami_eigenvalue(2, 1), 1);
  double sup_diff = 0.0, sup_dw = 0.0;
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    sup_diff = std::max(sup_diff, std::abs(g1.g[i] + p.dw[i]));
    sup_dw = std::max(sup_dw, std::abs(p.dw[i]));
  }
  CHECK(sup_diff / sup_dw <= 1e-6);
  CHECK(g1.g_r0 == doctest::Approx(-p.dw_r0()).epsilon(1e-8));
}

TEST_CASE("jump identity: [w''] equals -lambda0 (mbar+munder) w(r0)") {
  const RadialProfile p = weighted_profile();
  // w'' from the ODE on each side of r0: w'' = -(N-1)/r w' - lam m w.
  const double win_pp = -(1.0 / p.r0) * p.dw_r0() - p.lambda0 * p.mbar * p.w_r0();
  const double wout_pp = -(1.0 / p.r0) * p.dw_r0() + p.lambda0 * p.munder * p.w_r0();
  const double jump_wpp = win_pp - wout_pp;
  CHECK(jump_wpp ==
        doctest::Approx(-p.lambda0 * (p.mbar + p.munder) * p.w_r0()).epsilon(1e-12));
}

TEST_CASE("mode values g_l(r0) against the closed Bessel transmission form") {
  // Independent oracle: g inner ~ J_l(a r), outer ~ K_l(b r), coefficients
  // from the same continuity/jump system evaluated with series Bessel.
  const RadialProfile p = weighted_profile();
  const double a = std::sqrt(p.lambda0 * p.mbar), b = std::sqrt(p.lambda0 * p.munder);
  const double j = p.lambda0 * (p.mbar + p.munder) * p.w_r0();
  for (int ell : {1, 2, 3, 6}) {
    const double fi = xcheck::bessel_j(ell, a * p.r0);
    const double dfi = a * xcheck::bessel_j_prime(ell, a * p.r0);
    const double fo = xcheck::bessel_k(ell, b * p.r0);
    const double dfo = b * xcheck::bessel_k_prime(ell, b * p.r0);
    const double oracle = j * fi * fo / (dfi * fo - fi * dfo);
    const ModeEntry e = solve_mode(p, laplace_beltrami_eigenvalue(2, ell), ell);
    CHECK(e.g_r0 == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("mode table: ordering, positivity, high-degree decrease") {
  const RadialProfile p = weighted_profile();
  const ModeTable table = build_mode_table(p, 10);
  for (int ell = 2; ell <= 6; ++ell) {
    const double margin = table.at_degree(ell - 1).g_r0 - table.at_degree(ell).g_r0;
    CHECK(margin > 1e-8);
  }
  CHECK(table.at_degree(10).g_r0 < table.at_degree(2).g_r0);
  for (const auto& e : table.entries) {
    double gmax = 0.0, gmin = 0.0;
    for (double v : e.g) {
      gmax = std::max(gmax, v);
      gmin = std::min(gmin, v);
    }
    CHECK(gmin >= -1e-10 * gmax);
  }
  CHECK(table.jump > 0.0);
}

TEST_CASE("coercivity constant") {
  const RadialProfile p = weighted_profile();
  const ModeTable table = build_mode_table(p, 2);
  const double C = coercivity_constant(table);
  CHECK(C > 0.0);

  SUBCASE("stable under radial grid refinement") {
    const RadialProfile p2 = weighted_profile(2, 1.0, 1.0, 4000.0);
    const ModeTable t2 = build_mode_table(p2, 2);
    CHECK(coercivity_constant(t2) == doctest::Approx(C).epsilon(1e-6));
  }
  SUBCASE("recomputed pipeline for mbar = 2 stays consistent") {
    const RadialProfile p2 = weighted_profile(2, 2.0, 1.0);
    const ModeTable t2 = build_mode_table(p2, 2);
    const double C2 = coercivity_constant(t2);
    CHECK(C2 > 0.0);
    const double expect = 2.0 * t2.lambda0 * (t2.mbar + t2.munder) * t2.w_r0 * t2.r0 *
                          (t2.at_degree(1).g_r0 - t2.at_degree(2).g_r0);
    CHECK(C2 == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("predicted second derivative") {
  const RadialProfile p = weighted_profile();
  const ModeTable table = build_mode_table(p, 6);

  SUBCASE("all-zero coefficients give zero") {
    std::vector<HarmonicCoefficient> c{{2, 0.0}, {3, 0.0}};
    CHECK(predicted_second_derivative(c, table) == 0.0);
  }
  SUBCASE("degree-1 content is annihilated") {
    std::vector<HarmonicCoefficient> c{{1, 0.7}, {1, -0.3}};
    CHECK(predicted_second_derivative(c, table) == doctest::Approx(0.0));
  }
  SUBCASE("unit coefficient at degree 2") {
    std::vector<HarmonicCoefficient> c{{2, 1.0}};
    const double expect = 2.0 * table.lambda0 * (table.mbar + table.munder) * table.w_r0 *
                          table.r0 *
                          (table.at_degree(1).g_r0 - table.at_degree(2).g_r0);
    CHECK(predicted_second_derivative(c, table) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("unsolved degree raises") {
    std::vector<HarmonicCoefficient> c{{9, 1.0}};
    CHECK_THROWS_AS(predicted_second_derivative(c, table), std::invalid_argument);
  }
  SUBCASE("constant-mode content raises") {
    std::vector<HarmonicCoefficient> c{{0, 0.5}, {2, 1.0}};
    CHECK_THROWS_AS(predicted_second_derivative(c, table), std::invalid_argument);
  }
}

TEST_CASE("Sturm exchange identity for (h,k) = (1,2)") {
  const RadialProfile p = weighted_profile();
  const ModeTable table = build_mode_table(p, 2);
  CHECK(sturm_residual(p, table, 1, 2) <= 1e-6);
}

TEST_CASE("profile without the weighted tag is rejected") {
  const RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(solve_mode(p, 1.0, 1), std::invalid_argument);
}

TEST_CASE("frozen constants for the reference configuration (N=2, 1, 1)") {
  // Cross-checked against the series-Bessel oracle chain end to end.
  const RadialProfile p = weighted_profile();
  CHECK(p.lambda0 == doctest::Approx(8.190277132365617).epsilon(1e-8));
  CHECK(p.w_r0() == doctest::Approx(0.7071067881754175).epsilon(1e-6));
  const ModeTable table = build_mode_table(p, 2);
  CHECK(table.at_degree(1).g_r0 == doctest::Approx(2.586093805968).epsilon(1e-6));
  CHECK(table.at_degree(2).g_r0 == doctest::Approx(1.506262735370).epsilon(1e-6));
  CHECK(coercivity_constant(table) ==
        doctest::Approx(25.014937056350814 * p.r0).epsilon(1e-5));
}
