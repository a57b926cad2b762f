// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/grid_domain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bbspectra {

GridDomain::GridDomain(int dim, std::array<double, 3> lo, std::array<double, 3> hi,
                       std::array<int, 3> cells, const InsidePredicate& inside)
    : dim_(dim), lo_(lo), hi_(hi) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("GridDomain: dim must be 2 or 3");
  h_ = (hi[0] - lo[0]) / cells[0];
  for (int d = 0; d < dim_; ++d) {
    if (cells[d] <= 0) throw std::invalid_argument("GridDomain: cells must be positive");
    double hd = (hi[d] - lo[d]) / cells[d];
    if (std::abs(hd - h_) > 1e-12 * h_)
      throw std::invalid_argument("GridDomain: spacing must be uniform across axes");
    cells_[d] = cells[d];
  }
  for (int d = dim_; d < 3; ++d) cells_[d] = 1;
  stride_ = {1, cells_[0], cells_[0] * cells_[1]};
  total_cells_ = cells_[0] * cells_[1] * cells_[2];

  dof_index_.assign(total_cells_, -1);
  for (std::int64_t c = 0; c < total_cells_; ++c) {
    if (inside(cell_center(c))) {
      dof_index_[c] = static_cast<std::int64_t>(dof_cells_.size());
      dof_cells_.push_back(c);
    }
  }
  if (dof_cells_.empty()) throw std::runtime_error("degenerate domain: no interior cells");
  compute_distance_field();
}

std::array<std::int64_t, 3> GridDomain::cell_coords(std::int64_t cell) const {
  std::array<std::int64_t, 3> c{};
  c[2] = cell / stride_[2];
  c[1] = (cell - c[2] * stride_[2]) / stride_[1];
  c[0] = cell % cells_[0];
  return c;
}

std::int64_t GridDomain::cell_at(const std::array<std::int64_t, 3>& c) const {
  return c[0] + c[1] * stride_[1] + c[2] * stride_[2];
}

std::array<double, 3> GridDomain::cell_center(std::int64_t cell) const {
  auto c = cell_coords(cell);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d) x[d] = lo_[d] + (c[d] + 0.5) * h_;
  return x;
}

namespace {

// Felzenszwalb-Huttenlocher 1-D squared distance transform.
// f holds squared distances (INF where no source); result overwrites out.
void edt_1d(const std::vector<double>& f, std::vector<double>& out, std::vector<int>& v,
            std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  const double INF = std::numeric_limits<double>::infinity();
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -INF;
  z[1] = INF;
  for (int q = 1; q < n; ++q) {
    if (f[q] == INF) continue;
    if (f[v[k]] == INF) {
      v[k] = q;
      continue;
    }
    double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
    while (k > 0 && s <= z[k]) {
      --k;
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = INF;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    if (f[v[0]] == INF) {
      out[q] = INF;
      continue;
    }
    while (z[k + 1] < q) ++k;
    double dq = q - v[k];
    out[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

void GridDomain::compute_distance_field() {
  const double INF = std::numeric_limits<double>::infinity();
  // Squared distance (in cell units) to the nearest non-interior cell center;
  // one virtual layer of outside cells beyond every box face counts as
  // non-interior, so boundary-adjacent cells end up at distance h.
  std::vector<double> dist2(total_cells_, INF);
  for (std::int64_t c = 0; c < total_cells_; ++c)
    if (dof_index_[c] < 0) dist2[c] = 0.0;

  // Separable passes along each axis, lines padded with zero-cost sources at
  // both virtual ends (the halo).
  std::vector<double> line, lineout;
  std::vector<int> v;
  std::vector<double> z;
  for (int d = 0; d < dim_; ++d) {
    const std::int64_t n = cells_[d];
    line.resize(n + 2);
    lineout.resize(n + 2);
    std::array<std::int64_t, 3> c{};
    for (std::int64_t a = 0; a < cells_[(d + 1) % 3]; ++a) {
      for (std::int64_t b = 0; b < cells_[(d + 2) % 3]; ++b) {
        c[(d + 1) % 3] = a;
        c[(d + 2) % 3] = b;
        line[0] = 0.0;
        line[n + 1] = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
          c[d] = i;
          line[i + 1] = dist2[cell_at(c)];
        }
        edt_1d(line, lineout, v, z);
        for (std::int64_t i = 0; i < n; ++i) {
          c[d] = i;
          dist2[cell_at(c)] = lineout[i + 1];
        }
      }
    }
  }

  distance_.resize(dof_cells_.size());
  inradius_ = 0.0;
  for (std::size_t i = 0; i < dof_cells_.size(); ++i) {
    distance_[i] = h_ * std::sqrt(dist2[dof_cells_[i]]);
    inradius_ = std::max(inradius_, distance_[i]);
  }
}

std::vector<std::int64_t> GridDomain::inradius_argmax(double slack) const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < distance_.size(); ++i)
    if (distance_[i] >= inradius_ - slack) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

GridDomain make_box_domain(int dim, double L, int n,
                           const GridDomain::InsidePredicate& inside) {
  std::array<double, 3> lo{-L, -L, -L}, hi{L, L, L};
  std::array<int, 3> cells{n, n, n};
  return GridDomain(dim, lo, hi, cells, inside);
}

}  // namespace bbspectra
