// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <cmath>

#include "bbspectra/assembly.hpp"
#include "bbspectra/eigensolver.hpp"
#include "bbspectra/grid_domain.hpp"
#include "bbspectra/modes.hpp"
#include "bbspectra/optimizer.hpp"
#include "bbspectra/radial.hpp"

using namespace bbspectra;

namespace {

GridDomain disk_domain(int n) {
  return make_box_domain(2, 1.0, n, [](const std::array<double, 3>& x) {
    return x[0] * x[0] + x[1] * x[1] < 1.0;
  });
}

void BM_RadialLimitSolve(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_limit_eigen(2, 1.0, 1.0, 0.0).lambda0);
  }
}
BENCHMARK(BM_RadialLimitSolve)->Unit(benchmark::kMillisecond);

void BM_ModeTable(benchmark::State& state) {
  RadialProfile p = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  p.normalize(Normalization::WeightedMass);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_mode_table(p, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_ModeTable)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_StiffnessAssembly(benchmark::State& state) {
  const GridDomain d = disk_domain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_stiffness(d).rows());
  }
  state.SetItemsProcessed(state.iterations() * d.num_dofs());
}
BENCHMARK(BM_StiffnessAssembly)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_PrincipalEigenvalue(benchmark::State& state) {
  const GridDomain d = disk_domain(static_cast<int>(state.range(0)));
  const SparseSymmetric K = assemble_stiffness(d);
  const double h = d.spacing();
  const double eps = 0.05 * d.num_dofs() * h * h;
  BangBangWeight w;
  w.eps = eps;
  const std::int64_t n_eps = favorable_cell_count(d, eps);
  // central blob
  std::vector<std::pair<double, std::int64_t>> order;
  for (std::int64_t i = 0; i < d.num_dofs(); ++i) {
    const auto x = d.cell_center(d.cell_of_dof(i));
    order.push_back({x[0] * x[0] + x[1] * x[1], i});
  }
  std::sort(order.begin(), order.end());
  for (std::int64_t i = 0; i < n_eps; ++i) w.favorable.push_back(order[i].second);
  std::sort(w.favorable.begin(), w.favorable.end());
  const Vector M = assemble_weight_mass(d, w);

  ShiftedCholesky chol(K);
  for (auto _ : state) {
    EigenOptions opts;
    opts.cell_volume = h * h;
    benchmark::DoNotOptimize(principal_eigenvalue(chol, K, M, opts).lambda);
  }
}
BENCHMARK(BM_PrincipalEigenvalue)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RearrangementOptimize(benchmark::State& state) {
  const DomainSpec spec = DomainSpec::parse("disk:1.0");
  const GridDomain grid = spec.make_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rearrangement_optimize(grid, 0.02 * M_PI, 1.0, 1.0, {}).solution.lambda);
  }
}
BENCHMARK(BM_RearrangementOptimize)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
