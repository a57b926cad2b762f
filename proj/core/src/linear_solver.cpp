// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/linear_solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bbspectra {

Vector solve_spd(const SparseSymmetric& K, const Vector& b, double tol, int maxit) {
  const double bnorm = b.norm();
  Vector x = Vector::Zero(K.rows());
  if (bnorm == 0.0) return x;

  const Vector invdiag = K.diagonal().cwiseInverse();
  Vector r = b;
  Vector z = invdiag.cwiseProduct(r);
  Vector p = z;
  double rz = r.dot(z);
  for (int it = 0; it < maxit; ++it) {
    const Vector Kp = K.multiply(p);
    const double alpha = rz / p.dot(Kp);
    x += alpha * p;
    r -= alpha * Kp;
    if (r.norm() <= tol * bnorm) return x;
    z = invdiag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  std::ostringstream os;
  os << "solve_spd: non-convergence after " << maxit
     << " iterations, relative residual " << r.norm() / bnorm;
  throw std::runtime_error(os.str());
}

ShiftedCholesky::ShiftedCholesky(const SparseSymmetric& K) {
  base_ = K.matrix();  // row-major -> column-major conversion
  base_.makeCompressed();
  // Record where each diagonal entry sits in the compressed value array.
  // Stiffness diagonals are structurally present (positive by construction).
  diag_offsets_.resize(base_.cols());
  const auto* outer = base_.outerIndexPtr();
  const auto* inner = base_.innerIndexPtr();
  for (Eigen::Index j = 0; j < base_.cols(); ++j) {
    Eigen::Index pos = -1;
    for (Eigen::Index k = outer[j]; k < outer[j + 1]; ++k)
      if (inner[k] == j) {
        pos = k;
        break;
      }
    if (pos < 0) throw std::runtime_error("ShiftedCholesky: missing diagonal entry");
    diag_offsets_[j] = pos;
  }
  shifted_ = base_;
}

void ShiftedCholesky::refactorize(const Vector& diag_shift) {
  const Eigen::Index nnz = base_.nonZeros();
  std::copy(base_.valuePtr(), base_.valuePtr() + nnz, shifted_.valuePtr());
  for (Eigen::Index j = 0; j < base_.cols(); ++j)
    shifted_.valuePtr()[diag_offsets_[j]] += diag_shift[j];
  if (!analyzed_) {
    ldlt_.analyzePattern(shifted_);
    analyzed_ = true;
  }
  ldlt_.factorize(shifted_);
  if (ldlt_.info() != Eigen::Success)
    throw std::runtime_error("ShiftedCholesky: factorization failed");
}

void ShiftedCholesky::refactorize(double uniform_shift) {
  refactorize(Vector::Constant(base_.rows(), uniform_shift));
}

Vector ShiftedCholesky::solve(const Vector& b) const {
  if (!analyzed_) throw std::logic_error("ShiftedCholesky: solve before refactorize");
  return ldlt_.solve(b);
}

}  // namespace bbspectra
