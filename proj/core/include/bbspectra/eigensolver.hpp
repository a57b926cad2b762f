// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_EIGENSOLVER_HPP
#define BBSPECTRA_EIGENSOLVER_HPP

#include <limits>
#include <optional>

#include "bbspectra/linear_solver.hpp"
#include "bbspectra/sparse.hpp"

namespace bbspectra {

enum class Normalization { L2Domain, WeightedMass };

/// Positive principal eigenpair of K u = lambda M u.
struct EigenSolution {
  double lambda = std::numeric_limits<double>::infinity();
  Vector u;
  Normalization normalization = Normalization::L2Domain;
  double residual = 0.0;  // ||K u - lambda M u|| / ||K u||
  int iterations = 0;     // inner (inverse-power) iterations, total
  int outer_steps = 0;    // Newton linearizations == factorizations

  bool finite() const { return std::isfinite(lambda); }
};

struct EigenOptions {
  double tol = 1e-10;
  int maxit = 50000;
  Normalization normalization = Normalization::L2Domain;
  /// Warm start for the eigenvalue (speeds up sweeps substantially).
  std::optional<double> lambda_guess;
  /// Cell volume h^N, needed for the L2Domain normalization.
  double cell_volume = 1.0;
};

/// Computes lambda^1 = 1/mu* where mu* is the largest eigenvalue of the
/// pencil M u = mu K u (K SPD, M diagonal and possibly indefinite), together
/// with the positive principal eigenfunction.
///
/// The problem is solved through the equivalent SPD fixed point
///   (K + t M^-) u = t M^+ u,   lambda^1 = the unique t > 0 with nu_1(t) = t,
/// where nu_1(t) is the smallest pencil eigenvalue of ((K + t M^-), M^+).
/// nu_1 is concave in t, so safeguarded Newton converges monotonically; each
/// linearization runs inverse power iteration on (K + t M^-)^{-1} M^+, whose
/// iteration matrix is entrywise nonnegative, making the dominant mode the
/// positive Perron vector. Returns the +infinity sentinel when M has no
/// positive entries (then no positive principal eigenvalue exists).
///
/// Throws "M is identically zero" and "non-convergence" as applicable.
EigenSolution principal_eigenvalue(const SparseSymmetric& K, const Vector& M,
                                   const EigenOptions& opts = {});

/// Same, reusing a caller-held factorization context for K (the symbolic
/// analysis is shared across calls with the same sparsity).
EigenSolution principal_eigenvalue(ShiftedCholesky& chol, const SparseSymmetric& K,
                                   const Vector& M, const EigenOptions& opts = {});

}  // namespace bbspectra

#endif
