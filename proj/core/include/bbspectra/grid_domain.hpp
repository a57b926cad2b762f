// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_GRID_DOMAIN_HPP
#define BBSPECTRA_GRID_DOMAIN_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace bbspectra {

/// Masked Cartesian grid over a bounding box, cell-centered.
///
/// Interior degrees of freedom are the cells whose centers satisfy an
/// analytic inside-predicate; everything else carries no DOF (homogeneous
/// Dirichlet by exclusion). The boundary-distance field holds, per interior
/// cell, the Euclidean distance to the nearest non-interior cell center
/// (zero-ish adjacent to the mask boundary, max defines the discrete
/// inradius).
class GridDomain {
public:
  using InsidePredicate = std::function<bool(const std::array<double, 3>&)>;

  /// Builds the mask by evaluating `inside` at every cell center.
  /// `lo`/`hi` bound the box, `cells` counts cells per axis (only the first
  /// `dim` entries are used). Throws "degenerate domain" if no cell is inside.
  GridDomain(int dim, std::array<double, 3> lo, std::array<double, 3> hi,
             std::array<int, 3> cells, const InsidePredicate& inside);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  std::int64_t num_dofs() const { return static_cast<std::int64_t>(dof_cells_.size()); }
  std::int64_t num_cells() const { return total_cells_; }

  /// Flattened cell index -> DOF index, or -1 for masked-out cells.
  std::int64_t dof_of_cell(std::int64_t cell) const { return dof_index_[cell]; }
  /// DOF index -> flattened cell index.
  std::int64_t cell_of_dof(std::int64_t dof) const { return dof_cells_[dof]; }

  std::array<std::int64_t, 3> cell_coords(std::int64_t cell) const;
  std::int64_t cell_at(const std::array<std::int64_t, 3>& c) const;
  std::array<double, 3> cell_center(std::int64_t cell) const;
  bool is_interior(std::int64_t cell) const { return dof_index_[cell] >= 0; }

  /// Distance-to-boundary field per DOF (exact Euclidean distance transform
  /// to the nearest masked-out cell center, in physical units).
  const std::vector<double>& boundary_distance() const { return distance_; }
  /// Discrete inradius: max of the boundary-distance field.
  double discrete_inradius() const { return inradius_; }
  /// DOFs attaining the discrete inradius within `slack` (argmax set; the
  /// incenter may be a segment, e.g. in a rectangle).
  std::vector<std::int64_t> inradius_argmax(double slack) const;

  const std::array<std::int64_t, 3>& cells_per_axis() const { return cells_; }
  const std::array<double, 3>& box_lo() const { return lo_; }
  const std::array<double, 3>& box_hi() const { return hi_; }

private:
  void compute_distance_field();

  int dim_;
  std::array<double, 3> lo_{}, hi_{};
  std::array<std::int64_t, 3> cells_{};
  std::array<std::int64_t, 3> stride_{};
  double h_ = 0.0;
  std::int64_t total_cells_ = 0;
  std::vector<std::int64_t> dof_index_;  // per cell, -1 outside
  std::vector<std::int64_t> dof_cells_;  // per dof, cell index
  std::vector<double> distance_;         // per dof
  double inradius_ = 0.0;
};

/// Helper: square box [-L, L]^dim with n cells per axis.
GridDomain make_box_domain(int dim, double L, int n,
                           const GridDomain::InsidePredicate& inside);

}  // namespace bbspectra

#endif
