// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_ASSEMBLY_HPP
#define BBSPECTRA_ASSEMBLY_HPP

#include <cstdint>
#include <vector>

#include "bbspectra/grid_domain.hpp"
#include "bbspectra/sparse.hpp"

namespace bbspectra {

/// Bang-bang weight: mbar on the favorable DOF set E, -munder elsewhere.
/// E is kept sorted; its size must equal round(eps / h^N).
struct BangBangWeight {
  double mbar = 1.0;
  double munder = 1.0;
  double eps = 1.0;  // target favorable measure
  std::vector<std::int64_t> favorable;  // DOF indices, sorted ascending

  /// Throws unless |favorable| == round(eps/h^N) and all indices are valid DOFs.
  void validate(const GridDomain& domain) const;
};

/// 2N+1-point Laplacian with Dirichlet conditions by row/column exclusion,
/// scaled by h^{N-2} so u^T K u approximates the Dirichlet energy.
SparseSymmetric assemble_stiffness(const GridDomain& domain);

/// Diagonal mass entries m_i * h^N with m_i in {mbar, -munder}.
Vector assemble_weight_mass(const GridDomain& domain, const BangBangWeight& w);

/// Number of favorable cells for a target measure eps on this grid.
std::int64_t favorable_cell_count(const GridDomain& domain, double eps);

}  // namespace bbspectra

#endif
