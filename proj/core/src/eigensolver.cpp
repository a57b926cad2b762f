// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/eigensolver.hpp"

#include <cmath>
#include <stdexcept>

namespace bbspectra {

namespace {

struct InnerResult {
  double nu = 0.0;
  double slope = 0.0;   // d(nu)/dt = <M^- v, v> / <M^+ v, v>
  double residual = 0.0;
  int iterations = 0;
};

// Inverse power iteration for the smallest nu of (K + t M^-) v = nu M^+ v.
// chol must hold the factorization of K + t M^-. v is the warm start and is
// updated in place. Runs until the Rayleigh quotient settles to rel_tol or
// the cap is hit (the caller tracks global progress).
InnerResult inverse_power(const ShiftedCholesky& chol, const SparseSymmetric& K,
                          const Vector& mplus, const Vector& mminus, double t,
                          Vector& v, double rel_tol, int cap) {
  InnerResult res;
  double nu_prev = 0.0;
  auto apply_A = [&](const Vector& x) -> Vector {
    return K.multiply(x) + t * mminus.cwiseProduct(x);
  };
  for (int it = 1; it <= cap; ++it) {
    Vector bv = mplus.cwiseProduct(v);
    Vector y = chol.solve(bv);
    const double ynorm = std::sqrt(y.dot(apply_A(y)));
    if (!(ynorm > 0.0)) throw std::runtime_error("non-convergence: eigeniteration collapsed");
    v = y / ynorm;
    const Vector Av = apply_A(v);
    const double vBv = v.dot(mplus.cwiseProduct(v));
    const double vAv = v.dot(Av);
    res.nu = vAv / vBv;
    res.iterations = it;
    res.residual = (Av - res.nu * mplus.cwiseProduct(v)).norm() / Av.norm();
    if (it > 1 && std::abs(res.nu - nu_prev) <= rel_tol * std::abs(res.nu)) break;
    nu_prev = res.nu;
  }
  const double vMminusv = v.dot(mminus.cwiseProduct(v));
  const double vMplusv = v.dot(mplus.cwiseProduct(v));
  res.slope = vMminusv / vMplusv;
  return res;
}

}  // namespace

EigenSolution principal_eigenvalue(ShiftedCholesky& chol, const SparseSymmetric& K,
                                   const Vector& M, const EigenOptions& opts) {
  if (M.size() != K.rows()) throw std::invalid_argument("principal_eigenvalue: size mismatch");
  if ((M.array() == 0.0).all()) throw std::invalid_argument("principal_eigenvalue: M is identically zero");

  const Vector mplus = M.cwiseMax(0.0);
  const Vector mminus = (-M).cwiseMax(0.0);

  EigenSolution sol;
  sol.normalization = opts.normalization;
  if ((mplus.array() == 0.0).all()) {
    // m <= 0 a.e.: no positive principal eigenvalue.
    sol.lambda = std::numeric_limits<double>::infinity();
    sol.u = Vector::Zero(K.rows());
    return sol;
  }

  // Initial guess: warm start if provided, else the all-ones Rayleigh bound
  // of the favorable part (right order of magnitude, always positive).
  const Vector ones = Vector::Ones(K.rows());
  double t = opts.lambda_guess.value_or(K.quadratic_form(ones) / ones.dot(mplus.cwiseProduct(ones)));
  if (!(t > 0.0)) t = 1.0;

  Vector v = ones;
  double t_lo = 0.0;                                      // f(t_lo) > 0
  double t_hi = std::numeric_limits<double>::infinity();  // f(t_hi) < 0
  int total_inner = 0;
  bool converged = false;
  bool polish = false;

  for (int outer = 1; outer <= 100; ++outer) {
    chol.refactorize(Vector(t * mminus));
    // Early linearizations need less eigenvector accuracy than the endgame;
    // the polish pass runs to the roundoff floor under a fixed cap.
    const double inner_tol = polish ? 1e-14 : 1e-12;
    const int cap = polish ? std::min(500, opts.maxit) : std::max(2, opts.maxit - total_inner);
    if (!polish && total_inner >= opts.maxit)
      throw std::runtime_error("non-convergence: iteration budget exhausted");
    const InnerResult inner = inverse_power(chol, K, mplus, mminus, t, v, inner_tol, cap);
    total_inner += inner.iterations;
    sol.outer_steps = outer;
    sol.iterations = total_inner;

    const double f = inner.nu - t;
    if (f > 0.0) t_lo = std::max(t_lo, t);
    else t_hi = std::min(t_hi, t);

    if (polish) {
      sol.lambda = t;
      converged = true;
      break;
    }
    if (std::abs(f) <= opts.tol * t) {
      polish = true;  // one tight linearization at the fixed point
      continue;
    }

    const double fprime = inner.slope - 1.0;
    double t_next;
    if (f > 0.0 && fprime >= 0.0) {
      // Left of the concave maximum; the root is further right.
      t_next = std::isfinite(t_hi) ? 0.5 * (t + t_hi) : 4.0 * t;
    } else {
      t_next = t - f / fprime;
      const bool inside = t_next > t_lo && (!std::isfinite(t_hi) || t_next < t_hi);
      if (!inside) t_next = std::isfinite(t_hi) ? 0.5 * (t_lo + t_hi) : 4.0 * t;
    }
    if (std::abs(t_next - t) <= opts.tol * std::abs(t_next)) polish = true;
    t = t_next;
  }
  if (!converged) throw std::runtime_error("non-convergence: oscillating eigenvalue iteration");
  // Residual of the pencil K u = lambda M u at the returned eigenvalue.
  {
    const Vector Ku = K.multiply(v);
    sol.residual = (Ku - sol.lambda * M.cwiseProduct(v)).norm() / Ku.norm();
  }

  // Sign-fix and normalize.
  if (v.sum() < 0.0) v = -v;
  double scale = 1.0;
  if (opts.normalization == Normalization::L2Domain) {
    scale = 1.0 / (v.norm() * std::sqrt(opts.cell_volume));
  } else {
    const double vMv = v.dot(M.cwiseProduct(v));
    if (vMv <= 0.0) throw std::runtime_error("principal_eigenvalue: nonpositive weighted mass");
    scale = 1.0 / std::sqrt(vMv);
  }
  sol.u = scale * v;
  return sol;
}

EigenSolution principal_eigenvalue(const SparseSymmetric& K, const Vector& M,
                                   const EigenOptions& opts) {
  ShiftedCholesky chol(K);
  return principal_eigenvalue(chol, K, M, opts);
}

}  // namespace bbspectra
