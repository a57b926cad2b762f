// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/sparse.hpp"

#include <sstream>
#include <stdexcept>

namespace bbspectra {

void SparseSymmetric::add(std::int64_t i, std::int64_t j, double value) {
  if (finalized_) throw std::logic_error("SparseSymmetric: add after finalize");
  triplets_.emplace_back(i, j, value);
  if (i != j) triplets_.emplace_back(j, i, value);
}

void SparseSymmetric::finalize() {
  mat_.resize(n_, n_);
  mat_.setFromTriplets(triplets_.begin(), triplets_.end());
  mat_.makeCompressed();
  triplets_.clear();
  triplets_.shrink_to_fit();
  finalized_ = true;
}

Vector SparseSymmetric::multiply(const Vector& x) const {
  if (!finalized_) throw std::logic_error("SparseSymmetric: multiply before finalize");
  return mat_ * x;
}

Vector SparseSymmetric::diagonal() const { return mat_.diagonal(); }

std::string SparseSymmetric::export_triplets() const {
  std::ostringstream os;
  os.precision(17);
  for (std::int64_t k = 0; k < mat_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(mat_, k); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value() << "\n";
  return os.str();
}

}  // namespace bbspectra
