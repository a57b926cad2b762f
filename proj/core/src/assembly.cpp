// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bbspectra {

void BangBangWeight::validate(const GridDomain& domain) const {
  if (mbar <= 0.0 || munder <= 0.0)
    throw std::invalid_argument("BangBangWeight: densities must be positive");
  const std::int64_t n_eps = favorable_cell_count(domain, eps);
  if (static_cast<std::int64_t>(favorable.size()) != n_eps)
    throw std::invalid_argument("BangBangWeight: favorable cell count does not match eps");
  for (auto d : favorable)
    if (d < 0 || d >= domain.num_dofs())
      throw std::invalid_argument("BangBangWeight: favorable set contains masked cells");
}

std::int64_t favorable_cell_count(const GridDomain& domain, double eps) {
  const double hN = std::pow(domain.spacing(), domain.dim());
  return static_cast<std::int64_t>(std::llround(eps / hN));
}

SparseSymmetric assemble_stiffness(const GridDomain& domain) {
  if (domain.num_dofs() < 1) throw std::runtime_error("degenerate domain");
  const int dim = domain.dim();
  const double scale = std::pow(domain.spacing(), dim - 2);
  SparseSymmetric K(domain.num_dofs());
  for (std::int64_t dof = 0; dof < domain.num_dofs(); ++dof) {
    const std::int64_t cell = domain.cell_of_dof(dof);
    const auto cc = domain.cell_coords(cell);
    K.add(dof, dof, 2.0 * dim * scale);
    for (int d = 0; d < dim; ++d) {
      // Upper neighbor only; add() mirrors. Dirichlet neighbors are skipped
      // (row/column exclusion keeps the diagonal at 2N).
      auto nb = cc;
      nb[d] += 1;
      if (nb[d] >= domain.cells_per_axis()[d]) continue;
      const std::int64_t ncell = domain.cell_at(nb);
      const std::int64_t ndof = domain.dof_of_cell(ncell);
      if (ndof >= 0) K.add(dof, ndof, -scale);
    }
  }
  K.finalize();
  return K;
}

Vector assemble_weight_mass(const GridDomain& domain, const BangBangWeight& w) {
  w.validate(domain);
  const double hN = std::pow(domain.spacing(), domain.dim());
  Vector m = Vector::Constant(domain.num_dofs(), -w.munder * hN);
  for (auto d : w.favorable) m[d] = w.mbar * hN;
  return m;
}

}  // namespace bbspectra
