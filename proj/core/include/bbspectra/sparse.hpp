// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_SPARSE_HPP
#define BBSPECTRA_SPARSE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

namespace bbspectra {

using Vector = Eigen::VectorXd;

/// Symmetric sparse matrix in compressed row storage.
///
/// Symmetry is structural: entries are inserted once per unordered pair and
/// mirrored, so A == A^T holds exactly. Assembly collects triplets; finalize()
/// compresses. Storage is an Eigen row-major sparse matrix behind this
/// interface.
class SparseSymmetric {
public:
  explicit SparseSymmetric(std::int64_t n) : n_(n) {}

  std::int64_t rows() const { return n_; }

  /// Inserts the pair (i,j) and (j,i); diagonal entries once.
  void add(std::int64_t i, std::int64_t j, double value);
  void finalize();

  Vector multiply(const Vector& x) const;
  Vector diagonal() const;
  double quadratic_form(const Vector& x) const { return x.dot(multiply(x)); }

  /// Debug text export, one "row col value" triplet per line, row-major order.
  std::string export_triplets() const;

  bool finalized() const { return finalized_; }
  const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const { return mat_; }

private:
  std::int64_t n_;
  bool finalized_ = false;
  std::vector<Eigen::Triplet<double>> triplets_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> mat_;
};

}  // namespace bbspectra

#endif
