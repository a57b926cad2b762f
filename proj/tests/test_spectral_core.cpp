// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "bbspectra/assembly.hpp"
#include "bbspectra/eigensolver.hpp"
#include "bbspectra/grid_domain.hpp"
#include "bbspectra/linear_solver.hpp"
#include "bbspectra/xcheck.hpp"

using namespace bbspectra;

namespace {

GridDomain interior_block(int nx, int ny, double h = 1.0) {
  // nx x ny interior cells: box padded with one Dirichlet ring of cells.
  std::array<double, 3> lo{0, 0, 0}, hi{(nx + 2) * h, (ny + 2) * h, 0};
  return GridDomain(2, lo, hi, {nx + 2, ny + 2, 1}, [&](const std::array<double, 3>& x) {
    return x[0] > h && x[0] < (nx + 1) * h && x[1] > h && x[1] < (ny + 1) * h;
  });
}

Eigen::MatrixXd dense_of(const SparseSymmetric& K) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(K.rows(), K.rows());
  for (Eigen::Index k = 0; k < K.matrix().outerSize(); ++k)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(K.matrix(), k); it;
         ++it)
      D(it.row(), it.col()) = it.value();
  return D;
}

}  // namespace

TEST_CASE("stiffness: single interior cell is [4]") {
  const GridDomain d = interior_block(1, 1);
  const SparseSymmetric K = assemble_stiffness(d);
  REQUIRE(K.rows() == 1);
  CHECK(K.diagonal()[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(K.export_triplets() == "0 0 4\n");
}

TEST_CASE("stiffness: 2x2 block eigenvalues {2,4,4,6}") {
  const GridDomain d = interior_block(2, 2);
  const SparseSymmetric K = assemble_stiffness(d);
  REQUIRE(K.rows() == 4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_of(K));
  const auto ev = es.eigenvalues();
  CHECK(ev(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ev(1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(ev(2) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(ev(3) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("stiffness: unit-square refinement reaches 2 pi^2 within 1%") {
  const int n = 127;  // h = 1/128, interior cells of the unit square
  const double h = 1.0 / 128.0;
  const GridDomain d = interior_block(n, n, h);
  const SparseSymmetric K = assemble_stiffness(d);
  // Smallest eigenvalue of K/h^2 (N=2: K is already h^0-scaled) by the
  // principal solver with an all-favorable unit weight: lambda = ev_min / h^2.
  const Vector M = Vector::Constant(K.rows(), h * h);
  const EigenSolution sol = principal_eigenvalue(K, M);
  CHECK(sol.lambda == doctest::Approx(2.0 * M_PI * M_PI).epsilon(0.01));
}

TEST_CASE("stiffness symmetry is exact and the diagonal positive") {
  const GridDomain d = interior_block(5, 3);
  const SparseSymmetric K = assemble_stiffness(d);
  const Eigen::MatrixXd D = dense_of(K);
  CHECK((D - D.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(K.diagonal().minCoeff() > 0.0);
}

TEST_CASE("degenerate domain raises") {
  CHECK_THROWS_WITH_AS(
      make_box_domain(2, 1.0, 8, [](const std::array<double, 3>&) { return false; }),
      "degenerate domain: no interior cells", std::runtime_error);
}

TEST_CASE("weight mass: uniform and mixed sets") {
  const GridDomain d = interior_block(3, 3);
  const double hN = 1.0;
  BangBangWeight w;
  w.mbar = 2.0;
  w.munder = 3.0;

  SUBCASE("E empty: all entries -munder h^N") {
    w.eps = 0.0;
    const Vector m = assemble_weight_mass(d, w);
    CHECK(m.maxCoeff() == doctest::Approx(-3.0 * hN));
    CHECK(m.minCoeff() == doctest::Approx(-3.0 * hN));
  }
  SUBCASE("E everything: all entries mbar h^N") {
    w.eps = 9.0;
    for (std::int64_t i = 0; i < 9; ++i) w.favorable.push_back(i);
    const Vector m = assemble_weight_mass(d, w);
    CHECK(m.minCoeff() == doctest::Approx(2.0 * hN));
  }
  SUBCASE("mixed E: sum matches the closed form") {
    w.eps = 4.0;
    w.favorable = {0, 2, 5, 7};
    const Vector m = assemble_weight_mass(d, w);
    const double expected = hN * (2.0 * 4 - 3.0 * 5);
    CHECK(m.sum() == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("masked cells rejected") {
    w.eps = 1.0;
    w.favorable = {42};
    CHECK_THROWS_AS(assemble_weight_mass(d, w), std::invalid_argument);
  }
  SUBCASE("cell count must match round(eps/h^N)") {
    w.eps = 3.0;
    w.favorable = {0, 1};
    CHECK_THROWS_AS(assemble_weight_mass(d, w), std::invalid_argument);
  }
}

TEST_CASE("solve_spd basics") {
  SUBCASE("1x1") {
    SparseSymmetric K(1);
    K.add(0, 0, 4.0);
    K.finalize();
    Vector b(1);
    b << 8.0;
    CHECK(solve_spd(K, b)[0] == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("zero rhs gives zero") {
    const GridDomain d = interior_block(4, 4);
    const SparseSymmetric K = assemble_stiffness(d);
    const Vector x = solve_spd(K, Vector::Zero(K.rows()));
    CHECK(x.norm() == 0.0);
  }
  SUBCASE("non-convergence carries the last residual in the message") {
    const GridDomain d = interior_block(16, 16);
    const SparseSymmetric K = assemble_stiffness(d);
    Vector b = Vector::Ones(K.rows());
    try {
      solve_spd(K, b, 1e-14, 2);
      FAIL("expected non-convergence");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("relative residual") != std::string::npos);
    }
  }
  SUBCASE("random SPD 10x10 against dense factorization") {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd A(10, 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) A(i, j) = gauss(rng);
    const Eigen::MatrixXd S = A * A.transpose() + 10.0 * Eigen::MatrixXd::Identity(10, 10);
    SparseSymmetric K(10);
    for (int i = 0; i < 10; ++i)
      for (int j = i; j < 10; ++j) K.add(i, j, S(i, j));
    K.finalize();
    Vector b(10);
    for (int i = 0; i < 10; ++i) b[i] = gauss(rng);
    const Vector x = solve_spd(K, b, 1e-14);
    const Vector x_dense = S.llt().solve(b);
    CHECK((x - x_dense).norm() <= 1e-10 * x_dense.norm());
  }
}

TEST_CASE("principal eigenvalue: all-favorable matches dense oracle on 4 DOFs") {
  const GridDomain d = interior_block(2, 2);
  const SparseSymmetric K = assemble_stiffness(d);
  const double mbar = 1.7, hN = 1.0;
  const Vector M = Vector::Constant(4, mbar * hN);
  const EigenSolution sol = principal_eigenvalue(K, M);
  // lambda = ev_min(K) / (mbar h^N) = 2 / 1.7.
  CHECK(sol.lambda == doctest::Approx(2.0 / 1.7).epsilon(1e-10));
  const double oracle = xcheck::dense_principal_eigenvalue(dense_of(K), M);
  CHECK(sol.lambda == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("principal eigenvalue: all-negative weight returns the +inf sentinel") {
  const GridDomain d = interior_block(3, 3);
  const SparseSymmetric K = assemble_stiffness(d);
  const Vector M = Vector::Constant(9, -2.0);
  const EigenSolution sol = principal_eigenvalue(K, M);
  CHECK(!sol.finite());
}

TEST_CASE("principal eigenvalue: M identically zero raises") {
  const GridDomain d = interior_block(2, 2);
  const SparseSymmetric K = assemble_stiffness(d);
  CHECK_THROWS_AS(principal_eigenvalue(K, Vector::Zero(4)), std::invalid_argument);
}

TEST_CASE("principal eigenvalue: indefinite weight matches the dense pencil oracle") {
  const GridDomain d = interior_block(3, 3);
  const SparseSymmetric K = assemble_stiffness(d);
  BangBangWeight w;
  w.mbar = 2.0;
  w.munder = 1.0;
  w.eps = 3.0;
  w.favorable = {3, 4, 5};  // middle row
  const Vector M = assemble_weight_mass(d, w);

  const EigenSolution sol = principal_eigenvalue(K, M);
  Eigen::VectorXd vec;
  const double oracle = xcheck::dense_principal_eigenvalue(dense_of(K), M, &vec);
  CHECK(sol.lambda == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(sol.u.minCoeff() > 0.0);
  // Rayleigh identity at the solution.
  const double rayleigh = K.quadratic_form(sol.u) / sol.u.dot(M.cwiseProduct(sol.u));
  CHECK(rayleigh == doctest::Approx(sol.lambda).epsilon(1e-9));
  CHECK(sol.residual <= 1e-9);
}

TEST_CASE("principal eigenvalue: scaling M by c>0 divides lambda by c") {
  const GridDomain d = interior_block(4, 4);
  const SparseSymmetric K = assemble_stiffness(d);
  BangBangWeight w;
  w.eps = 5.0;
  w.favorable = {5, 6, 9, 10, 12};
  const Vector M = assemble_weight_mass(d, w);
  const EigenSolution a = principal_eigenvalue(K, M);
  const EigenSolution b = principal_eigenvalue(K, Vector(3.5 * M));
  CHECK(b.lambda == doctest::Approx(a.lambda / 3.5).epsilon(1e-10));
  const double cosdist =
      1.0 - std::abs(a.u.dot(b.u)) / (a.u.norm() * b.u.norm());
  CHECK(cosdist <= 1e-10);
}

TEST_CASE("principal eigenvalue: domain monotonicity under mask inclusion") {
  // Same favorable cells, nested domains: a 4x4 block inside a 8x8 block.
  const double h = 0.25;
  auto small = interior_block(4, 4, h);
  auto large = interior_block(8, 8, h);
  BangBangWeight w;
  w.eps = 2 * h * h;

  // E: two cells near the corner of the small block, mapped by position.
  std::vector<std::array<double, 2>> epos;
  for (std::int64_t dof : {std::int64_t(5), std::int64_t(6)}) {
    const auto x = small.cell_center(small.cell_of_dof(dof));
    epos.push_back({x[0], x[1]});
  }
  auto efrom = [&](const GridDomain& dom) {
    std::vector<std::int64_t> E;
    for (std::int64_t i = 0; i < dom.num_dofs(); ++i) {
      const auto x = dom.cell_center(dom.cell_of_dof(i));
      for (const auto& p : epos)
        if (std::abs(x[0] - p[0]) < 1e-9 && std::abs(x[1] - p[1]) < 1e-9) E.push_back(i);
    }
    return E;
  };

  BangBangWeight ws = w, wl = w;
  ws.favorable = efrom(small);
  wl.favorable = efrom(large);
  REQUIRE(ws.favorable.size() == 2);
  REQUIRE(wl.favorable.size() == 2);
  const SparseSymmetric Ks = assemble_stiffness(small);
  const SparseSymmetric Kl = assemble_stiffness(large);
  const double lam_small = principal_eigenvalue(Ks, assemble_weight_mass(small, ws)).lambda;
  const double lam_large = principal_eigenvalue(Kl, assemble_weight_mass(large, wl)).lambda;
  CHECK(lam_small >= lam_large);
}

TEST_CASE("principal eigenvalue: bit-identical reruns") {
  const GridDomain d = interior_block(5, 5);
  const SparseSymmetric K = assemble_stiffness(d);
  BangBangWeight w;
  w.eps = 4.0;
  w.favorable = {6, 7, 11, 12};
  const Vector M = assemble_weight_mass(d, w);
  const EigenSolution a = principal_eigenvalue(K, M);
  const EigenSolution b = principal_eigenvalue(K, M);
  CHECK(a.lambda == b.lambda);
  CHECK((a.u - b.u).norm() == 0.0);
}

TEST_CASE("distance field: disk inradius within 2h") {
  const int n = 64;
  const GridDomain d = make_box_domain(2, 1.0, n, [](const std::array<double, 3>& x) {
    return x[0] * x[0] + x[1] * x[1] < 1.0;
  });
  CHECK(d.discrete_inradius() == doctest::Approx(1.0).epsilon(2.0 * d.spacing()));
}
