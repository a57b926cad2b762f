// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_LINEAR_SOLVER_HPP
#define BBSPECTRA_LINEAR_SOLVER_HPP

#include <memory>

#include <Eigen/SparseCholesky>

#include "bbspectra/sparse.hpp"

namespace bbspectra {

/// Jacobi-preconditioned conjugate gradients. Deterministic: fixed iteration
/// order, no pivoting, all-zeros start. Throws on non-convergence, carrying
/// the last residual in the message.
Vector solve_spd(const SparseSymmetric& K, const Vector& b, double tol = 1e-12,
                 int maxit = 100000);

/// Sparse LDL^T factorization of K + D for diagonal D, with the symbolic
/// analysis done once; refactorize() reuses it when only D changes.
/// Deterministic (AMD ordering is input-determined).
class ShiftedCholesky {
public:
  explicit ShiftedCholesky(const SparseSymmetric& K);

  void refactorize(const Vector& diag_shift);
  void refactorize(double uniform_shift);
  Vector solve(const Vector& b) const;

private:
  Eigen::SparseMatrix<double> base_;      // column-major copy for the solver
  Eigen::SparseMatrix<double> shifted_;
  std::vector<Eigen::Index> diag_offsets_;  // position of (i,i) in value array
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  bool analyzed_ = false;
};

}  // namespace bbspectra

#endif
