// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_XCHECK_HPP
#define BBSPECTRA_XCHECK_HPP

// Independent cross-check oracles for the verification harness and the test
// suites. Nothing here is used by the production solvers: the radial and
// plane paths are checked *against* these closed-form routes, so keeping the
// two sides separate is the point.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace bbspectra::xcheck {

// --- Bessel functions, series + asymptotics, adequate for arguments < ~30 --

/// J_n by ascending series (n >= 0). Accurate in double for x <~ 18.
inline double bessel_j(int n, double x) {
  if (x < 0.0) throw std::invalid_argument("bessel_j: x >= 0 required");
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= x / (2.0 * k);
  double sum = term;
  const double q = x * x / 4.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (k * (n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

/// I_n by ascending series.
inline double bessel_i(int n, double x) {
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= x / (2.0 * k);
  double sum = term;
  const double q = x * x / 4.0;
  for (int k = 1; k < 300; ++k) {
    term *= q / (k * (n + k));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

/// K_0 and K_1 by the standard small-x series (x <~ 15), large-x asymptotic
/// beyond; K_n by stable upward recurrence.
inline double bessel_k(int n, double x) {
  if (x <= 0.0) throw std::invalid_argument("bessel_k: x > 0 required");
  double k0, k1;
  if (x <= 15.0) {
    constexpr double euler = 0.57721566490153286;
    const double q = x * x / 4.0;
    // K0 = -(log(x/2)+gamma) I0 + sum q^k/(k!)^2 H_k
    double term = 1.0, sum0 = 0.0, hk = 0.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (k * k);
      hk += 1.0 / k;
      sum0 += term * hk;
      if (term * hk < 1e-18 * (std::abs(sum0) + 1.0)) break;
    }
    k0 = -(std::log(x / 2.0) + euler) * bessel_i(0, x) + sum0;
    // K1 = (log(x/2)+gamma) I1 + 1/x - x/4 sum q^k (H_k + H_{k+1}) / (k!(k+1)!)
    double term1 = 1.0, sum1 = 1.0 * (0.0 + 1.0);  // k=0 term: (H_0+H_1)=1
    double hk1 = 0.0, hk2 = 1.0;
    for (int k = 1; k < 200; ++k) {
      term1 *= q / (k * (k + 1));
      hk1 += 1.0 / k;
      hk2 += 1.0 / (k + 1);
      sum1 += term1 * (hk1 + hk2);
      if (term1 * (hk1 + hk2) < 1e-18 * std::abs(sum1)) break;
    }
    k1 = (std::log(x / 2.0) + euler) * bessel_i(1, x) + 1.0 / x - (x / 4.0) * sum1;
  } else {
    // Asymptotic expansion, enough terms for x > 15.
    auto kasym = [x](int nu) {
      const double mu = 4.0 * nu * nu;
      double term = 1.0, sum = 1.0;
      for (int k = 1; k <= 12; ++k) {
        term *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * x * k);
        sum += term;
      }
      return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * sum;
    };
    k0 = kasym(0);
    k1 = kasym(1);
  }
  if (n == 0) return k0;
  if (n == 1) return k1;
  double km = k0, k = k1;
  for (int m = 1; m < n; ++m) {
    const double kp = km + (2.0 * m / x) * k;
    km = k;
    k = kp;
  }
  return k;
}

inline double bessel_j_prime(int n, double x) {
  if (n == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

inline double bessel_k_prime(int n, double x) {
  if (n == 0) return -bessel_k(1, x);
  return -0.5 * (bessel_k(n - 1, x) + bessel_k(n + 1, x));
}

/// First positive zero of J_0 by bisection on the series.
inline double first_zero_j0() {
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j(0, lo) * bessel_j(0, mid) <= 0.0 ? hi : lo) = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

/// Generic bisection.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14) {
  double flo = f(lo);
  if (flo * f(hi) > 0.0) throw std::runtime_error("xcheck bisect: no sign change");
  for (int i = 0; i < 300 && hi - lo > tol * std::abs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (flo * fm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

/// Limit eigenvalue on R^2 by the Bessel matching identity:
///   sqrt(l mbar) J1(sqrt(l mbar) r0)/J0(..) = sqrt(l munder) K1(sqrt(l munder) r0)/K0(..).
inline double limit_eigenvalue_2d(double mbar, double munder) {
  const double r0 = 1.0 / std::sqrt(M_PI);
  const double j01 = first_zero_j0();
  const double lam_hi = j01 * j01 / (mbar * r0 * r0);
  auto f = [&](double lam) {
    const double a = std::sqrt(lam * mbar), b = std::sqrt(lam * munder);
    return a * bessel_j(1, a * r0) / bessel_j(0, a * r0) -
           b * bessel_k(1, b * r0) / bessel_k(0, b * r0);
  };
  return bisect(f, 1e-9 * lam_hi, lam_hi * (1.0 - 1e-12));
}

/// Limit eigenvalue on R^3: elementary matching k cot(k r0) = -q.
inline double limit_eigenvalue_3d(double mbar, double munder) {
  const double r0 = std::pow(3.0 / (4.0 * M_PI), 1.0 / 3.0);
  auto f = [&](double lam) {
    const double k = std::sqrt(lam * mbar), q = std::sqrt(lam * munder);
    return k / std::tan(k * r0) + q;
  };
  const double lam_hi = M_PI * M_PI / (mbar * r0 * r0);
  return bisect(f, 1e-9 * lam_hi, lam_hi * (1.0 - 1e-12));
}

/// Lambda(R) on the ball B_R (Dirichlet), N=2, via Bessel forms.
inline double finite_ball_eigenvalue_2d(double mbar, double munder, double R) {
  const double r0 = 1.0 / std::sqrt(M_PI);
  const double j01 = first_zero_j0();
  const double lam_hi = j01 * j01 / (mbar * r0 * r0);
  auto f = [&](double lam) {
    const double a = std::sqrt(lam * mbar), b = std::sqrt(lam * munder);
    const double inner = -a * bessel_j(1, a * r0) / bessel_j(0, a * r0);
    const double c = bessel_k(0, b * R) / bessel_i(0, b * R);
    const double num = -b * bessel_k(1, b * r0) - c * b * bessel_i(1, b * r0);
    const double den = bessel_k(0, b * r0) - c * bessel_i(0, b * r0);
    return inner - num / den;
  };
  return bisect(f, 1e-12 * lam_hi + 1e-13, lam_hi * (1.0 - 1e-12));
}

// --- dense pencil oracle -----------------------------------------------

/// Smallest positive lambda of K u = lambda M u (dense, tiny systems) whose
/// eigenvector can be sign-fixed positive. Returns +inf if none.
inline double dense_principal_eigenvalue(const Eigen::MatrixXd& K, const Eigen::VectorXd& M,
                                         Eigen::VectorXd* eigvec = nullptr) {
  // Solve M u = mu K u as a symmetric-definite pencil: B = L^{-1} D L^{-T}.
  const Eigen::LLT<Eigen::MatrixXd> llt(K);
  const Eigen::MatrixXd Linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(K.rows(), K.cols()));
  const Eigen::MatrixXd S = Linv * M.asDiagonal() * Linv.transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  const double mu_max = es.eigenvalues().maxCoeff();
  if (mu_max <= 0.0) return std::numeric_limits<double>::infinity();
  Eigen::Index idx;
  es.eigenvalues().maxCoeff(&idx);
  if (eigvec) {
    Eigen::VectorXd v = llt.matrixL().transpose().solve(es.eigenvectors().col(idx));
    if (v.sum() < 0) v = -v;
    *eigvec = v;
  }
  return 1.0 / mu_max;
}

// --- Fourier-Bessel collocation oracle for perturbed sets (N=2) ---------

/// lambda^1(A, R^2) for A = {r < r0 + phi(theta)} with phi an even cosine
/// polynomial (modes 0 and even k), solved by interface collocation of exact
/// Fourier-Bessel solutions on both sides. Machine-accurate for smooth small
/// perturbations; independent of every grid path.
inline double collocation_eigenvalue_even_2d(const std::function<double(double)>& phi,
                                             int nmodes, double lam_lo, double lam_hi) {
  const double r0 = 1.0 / std::sqrt(M_PI);
  auto smallest_sv = [&](double lam) {
    const double a = std::sqrt(lam), b = std::sqrt(lam);
    const int m = nmodes;             // cos(2k theta), k = 0..m-1
    const int rows = 4 * m;           // continuity + derivative at 2m angles
    Eigen::MatrixXd A(rows, 2 * m);
    for (int i = 0; i < 2 * m; ++i) {
      const double th = (i + 0.5) * (M_PI / 2.0) / (2 * m);  // quarter circle
      const double Rb = r0 + phi(th);
      for (int k = 0; k < m; ++k) {
        const int n = 2 * k;
        const double c = std::cos(n * th);
        A(2 * i, k) = bessel_j(n, a * Rb) * c;
        A(2 * i, m + k) = -bessel_k(n, b * Rb) * c;
        A(2 * i + 1, k) = a * bessel_j_prime(n, a * Rb) * c;
        A(2 * i + 1, m + k) = -b * bessel_k_prime(n, b * Rb) * c;
      }
    }
    for (int c = 0; c < A.cols(); ++c) {
      const double norm = A.col(c).norm();
      if (norm > 0) A.col(c) /= norm;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues().tail(1)(0);
  };
  // The smallest singular value dips sharply at the eigenvalue: locate the
  // minimum by scan + golden-section refinement.
  const int scan = 160;
  double best = lam_lo, bestv = 1e300;
  for (int i = 0; i <= scan; ++i) {
    const double lam = lam_lo + (lam_hi - lam_lo) * i / scan;
    const double v = smallest_sv(lam);
    if (v < bestv) {
      bestv = v;
      best = lam;
    }
  }
  double lo = best - (lam_hi - lam_lo) / scan;
  double hi = best + (lam_hi - lam_lo) / scan;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = smallest_sv(x1), f2 = smallest_sv(x2);
  for (int i = 0; i < 90; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = smallest_sv(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = smallest_sv(x2);
    }
    if (hi - lo < 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bbspectra::xcheck

#endif
