// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bbspectra {

namespace {

constexpr int kDim = 2;  // the Fourier battery is two-dimensional

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// C^2 quintic smoothstep on [0,1].
double smoothstep5(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

// Cutoff h(rho): 1 on [3r0/4, 5r0/4], 0 outside (r0/2, 3r0/2).
double cutoff(double rho, double r0) {
  if (rho <= 0.5 * r0 || rho >= 1.5 * r0) return 0.0;
  if (rho < 0.75 * r0) return smoothstep5((rho - 0.5 * r0) / (0.25 * r0));
  if (rho <= 1.25 * r0) return 1.0;
  return smoothstep5((1.5 * r0 - rho) / (0.25 * r0));
}

}  // namespace

double NearlySphericalSet::phi_at(double t) const {
  double v = c0 + d1 * std::cos(t) + e1 * std::sin(t);
  for (const auto& m : modes) v += m.a_cos * std::cos(m.k * t) + m.b_sin * std::sin(m.k * t);
  return v;
}

double NearlySphericalSet::deformed_radius(double t, double th) const {
  const double rphi = r0 + phi_at(th);
  const double bracket = std::pow(r0, kDim) + t * (std::pow(rphi, kDim) - std::pow(r0, kDim));
  if (bracket <= 0.0) throw std::runtime_error("deformation too large");
  return std::pow(bracket, 1.0 / kDim);
}

double NearlySphericalSet::deformed_measure(double t) const {
  double acc = 0.0;
  for (double th : theta) {
    const double rho = deformed_radius(t, th);
    acc += std::pow(rho, kDim) / kDim;
  }
  return acc * (2.0 * M_PI / theta.size());
}

NearlySphericalSet normalize_volume_barycenter(const PerturbationSpec& spec,
                                               int angular_grid) {
  if (!is_power_of_two(angular_grid))
    throw std::invalid_argument("normalize_volume_barycenter: angular grid must be a power of two");
  NearlySphericalSet set;
  set.r0 = unit_ball_radius(kDim);
  int kmax = 1;
  for (const auto& m : spec.modes) {
    if (m.k < 2)
      throw std::invalid_argument("PerturbationSpec: modes k<2 are reserved for normalization");
    set.modes.push_back({m.k, spec.amplitude * m.a_cos, spec.amplitude * m.b_sin});
    kmax = std::max(kmax, m.k);
  }
  const int M = std::max(angular_grid, 1 << static_cast<int>(std::ceil(std::log2(8.0 * (kmax + 1)))));
  set.theta.resize(M);
  for (int i = 0; i < M; ++i) set.theta[i] = (2.0 * M_PI * i) / M;

  const double r0 = set.r0;
  auto eval_phi = [&](double th) { return set.phi_at(th); };

  double vol_residual = 0.0, bar_residual = 0.0;
  bool converged = false;
  for (int sweep = 0; sweep < 20; ++sweep) {
    // Volume: exact quadratic in the constant mode (N=2). With phi = c0+psi,
    // int[(r0+phi)^2 - r0^2] = 4 pi r0 c0 + 2 pi c0^2 + ||psi||^2 = 0.
    double psi2 = M_PI * (set.d1 * set.d1 + set.e1 * set.e1);
    for (const auto& m : set.modes) psi2 += M_PI * (m.a_cos * m.a_cos + m.b_sin * m.b_sin);
    const double disc = r0 * r0 - psi2 / (2.0 * M_PI);
    if (disc < 0.0) throw std::runtime_error("amplitude too large: no volume-fixing constant");
    set.c0 = -r0 + std::sqrt(disc);

    // Barycenter: zero the first moment of (r0+phi)^3 by a Newton step in
    // the degree-1 coefficients. Quadrature is exact for trig polynomials.
    double Fc = 0.0, Fs = 0.0, Jcc = 0.0, Jcs = 0.0, Jss = 0.0;
    for (double th : set.theta) {
      const double rp = r0 + eval_phi(th);
      const double rp2 = rp * rp, rp3 = rp2 * rp;
      const double c = std::cos(th), s = std::sin(th);
      Fc += c * rp3;
      Fs += s * rp3;
      Jcc += 3.0 * c * c * rp2;
      Jcs += 3.0 * c * s * rp2;
      Jss += 3.0 * s * s * rp2;
    }
    const double wq = 2.0 * M_PI / M;
    Fc *= wq;
    Fs *= wq;
    Jcc *= wq;
    Jcs *= wq;
    Jss *= wq;
    const double det = Jcc * Jss - Jcs * Jcs;
    set.d1 -= (Jss * Fc - Jcs * Fs) / det;
    set.e1 -= (Jcc * Fs - Jcs * Fc) / det;

    // Residuals after the sweep.
    double vol = 0.0, bc = 0.0, bs = 0.0;
    for (double th : set.theta) {
      const double rp = r0 + eval_phi(th);
      vol += rp * rp - r0 * r0;
      const double rp3 = rp * rp * rp;
      bc += std::cos(th) * rp3;
      bs += std::sin(th) * rp3;
    }
    vol_residual = std::abs(vol) * wq / 2.0;           // measure defect
    bar_residual = std::hypot(bc, bs) * wq / 3.0;      // first-moment defect
    if (vol_residual <= 1e-12 && bar_residual <= 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged) throw std::runtime_error("normalization failure: alternation did not converge");

  set.phi.resize(M);
  set.phi_inf = 0.0;
  double l2 = 0.0;
  double c1 = 0.0;
  for (int i = 0; i < M; ++i) {
    set.phi[i] = eval_phi(set.theta[i]);
    set.phi_inf = std::max(set.phi_inf, std::abs(set.phi[i]));
    l2 += set.phi[i] * set.phi[i];
    double dphi = -set.d1 * std::sin(set.theta[i]) + set.e1 * std::cos(set.theta[i]);
    for (const auto& m : set.modes)
      dphi += m.k * (-m.a_cos * std::sin(m.k * set.theta[i]) + m.b_sin * std::cos(m.k * set.theta[i]));
    c1 = std::max(c1, std::abs(dphi));
  }
  set.phi_l2 = std::sqrt(l2 * 2.0 * M_PI / M);
  set.phi_c1 = c1;
  if (set.phi_inf > 0.5 * set.r0)
    throw std::runtime_error("amplitude too large: ||phi||_inf exceeds r0/2");
  return set;
}

double vector_field_X(const NearlySphericalSet& set, double rho, double theta) {
  if (rho <= 0.0) throw std::invalid_argument("vector_field_X: rho must be positive");
  const double rphi = set.r0 + set.phi_at(theta);
  return (std::pow(rphi, kDim) - std::pow(set.r0, kDim)) / (kDim * std::pow(rho, kDim - 1));
}

double deformation_map_radius(const NearlySphericalSet& set, double t, double rho,
                              double theta) {
  const double rphi = set.r0 + set.phi_at(theta);
  const double bracket = std::pow(rho, kDim) +
                         t * cutoff(rho, set.r0) *
                             (std::pow(rphi, kDim) - std::pow(set.r0, kDim));
  if (rho > 0.0 && bracket <= 0.0) throw std::runtime_error("deformation too large");
  return std::pow(bracket, 1.0 / kDim);
}

std::array<double, 2> deformation_map(const NearlySphericalSet& set, double t, double x,
                                      double y) {
  const double rho = std::hypot(x, y);
  if (rho == 0.0) return {0.0, 0.0};
  const double theta = std::atan2(y, x);
  const double mapped = deformation_map_radius(set, t, rho, theta);
  return {mapped * std::cos(theta), mapped * std::sin(theta)};
}

double SphericalCoefficients::sum_squares() const {
  double s = c0 * c0;
  for (const auto& p : by_degree) s += p[0] * p[0] + p[1] * p[1];
  return s;
}

std::vector<HarmonicCoefficient> SphericalCoefficients::flatten() const {
  std::vector<HarmonicCoefficient> out;
  out.push_back({0, c0});
  for (std::size_t k = 0; k < by_degree.size(); ++k) {
    out.push_back({static_cast<int>(k + 1), by_degree[k][0]});
    out.push_back({static_cast<int>(k + 1), by_degree[k][1]});
  }
  return out;
}

SphericalCoefficients spherical_coefficients(const std::vector<double>& trace) {
  const std::size_t M = trace.size();
  if (!is_power_of_two(M))
    throw std::invalid_argument("spherical_coefficients: grid size must be a power of two");
  SphericalCoefficients out;
  const double wq = 2.0 * M_PI / M;
  double mean = 0.0;
  for (double v : trace) mean += v;
  out.c0 = mean * wq / std::sqrt(2.0 * M_PI);
  const std::size_t kmax = M / 2 - 1;
  out.by_degree.resize(kmax, {0.0, 0.0});
  for (std::size_t k = 1; k <= kmax; ++k) {
    double cc = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      const double th = (2.0 * M_PI * i) / M;
      cc += trace[i] * std::cos(k * th);
      ss += trace[i] * std::sin(k * th);
    }
    out.by_degree[k - 1] = {cc * wq / std::sqrt(M_PI), ss * wq / std::sqrt(M_PI)};
  }
  return out;
}

SphericalCoefficients boundary_velocity_coefficients(const NearlySphericalSet& set) {
  std::vector<double> trace(set.theta.size());
  for (std::size_t i = 0; i < set.theta.size(); ++i)
    trace[i] = vector_field_X(set, set.r0, set.theta[i]);
  return spherical_coefficients(trace);
}

PlaneEigenContext::PlaneEigenContext(double R, int gridres, double mbar, double munder,
                                     double lambda0)
    : domain_(make_box_domain(kDim, R, gridres,
                              [R](const std::array<double, 3>& x) {
                                return x[0] * x[0] + x[1] * x[1] < R * R;
                              })),
      K_(assemble_stiffness(domain_)),
      chol_(K_),
      mbar_(mbar),
      munder_(munder),
      lambda0_(lambda0) {
  const double r0 = unit_ball_radius(kDim);
  const double decay = 1.0 / std::sqrt(lambda0 * munder);
  if (R < r0 + 6.0 * decay)
    throw std::invalid_argument("PlaneEigenContext: R below r0 + 6 decay lengths");
  if (domain_.spacing() > r0 / 64.0)
    throw std::invalid_argument("PlaneEigenContext: grid too coarse (h > r0/64)");
  n_eps_ = favorable_cell_count(domain_, 1.0);
  rad_.resize(domain_.num_dofs());
  th_.resize(domain_.num_dofs());
  for (std::int64_t i = 0; i < domain_.num_dofs(); ++i) {
    const auto x = domain_.cell_center(domain_.cell_of_dof(i));
    rad_[i] = std::hypot(x[0], x[1]);
    th_[i] = std::atan2(x[1], x[0]);
  }
}

EigenSolution PlaneEigenContext::solve_key(const std::function<double(double, double)>& key,
                                           std::optional<double> lambda_guess) {
  const std::int64_t n = domain_.num_dofs();
  std::vector<std::int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> keys(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto x = domain_.cell_center(domain_.cell_of_dof(i));
    keys[i] = key(x[0], x[1]);
  }
  std::nth_element(order.begin(), order.begin() + n_eps_, order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return keys[a] != keys[b] ? keys[a] < keys[b] : a < b;
                   });
  BangBangWeight w;
  w.mbar = mbar_;
  w.munder = munder_;
  w.eps = 1.0;
  w.favorable.assign(order.begin(), order.begin() + n_eps_);
  std::sort(w.favorable.begin(), w.favorable.end());
  const Vector M = assemble_weight_mass(domain_, w);

  EigenOptions opts;
  opts.cell_volume = std::pow(domain_.spacing(), kDim);
  opts.lambda_guess = lambda_guess;
  return principal_eigenvalue(chol_, K_, M, opts);
}

EigenSolution PlaneEigenContext::solve(const std::function<double(double)>& boundary_radius,
                                       std::optional<double> lambda_guess) {
  return solve_key(
      [&](double x, double y) { return std::hypot(x, y) - boundary_radius(std::atan2(y, x)); },
      lambda_guess);
}

PlaneGapResult eigenvalue_on_plane(const NearlySphericalSet& set, double R, int gridres,
                                   double mbar, double munder, double lambda0) {
  PlaneEigenContext ctx(R, gridres, mbar, munder, lambda0);
  PlaneGapResult res;
  res.h = ctx.spacing();
  res.dofs = ctx.domain().num_dofs();
  // Blow-up scale: lambda_eps ~ lambda0; the same-grid B run then warm-starts A.
  const EigenSolution solB = ctx.solve([&](double) { return set.r0; }, lambda0);
  const EigenSolution solA = ctx.solve([&](double th) { return set.radius_at(th); }, solB.lambda);
  res.lambda_A = solA.lambda;
  res.lambda_B = solB.lambda;
  res.gap = solA.lambda - solB.lambda;
  return res;
}

AsymmetryRecord asymmetry_ratio(const NearlySphericalSet& set, double R, int gridres,
                                double mbar, double munder, double lambda0) {
  const PlaneGapResult fine = eigenvalue_on_plane(set, R, gridres, mbar, munder, lambda0);
  // Second resolution for the noise floor: 3/4 of the fine grid, but never
  // below the h <= r0/64 contract of the solver.
  const int min_grid =
      static_cast<int>(std::ceil(128.0 * R / unit_ball_radius(2))) + 1;
  const int coarse_grid = std::max(min_grid, 3 * gridres / 4);
  const PlaneGapResult coarse =
      eigenvalue_on_plane(set, R, coarse_grid, mbar, munder, lambda0);
  AsymmetryRecord rec;
  rec.gap = fine.gap;
  rec.lambda_A = fine.lambda_A;
  rec.lambda_B = fine.lambda_B;
  rec.phi_l2_sq = set.phi_l2 * set.phi_l2;
  rec.ratio = rec.phi_l2_sq > 0.0 ? rec.gap / rec.phi_l2_sq : 0.0;
  rec.noise_floor = std::abs(fine.gap - coarse.gap);
  rec.inconclusive = !(rec.gap > rec.noise_floor);
  return rec;
}

PathDerivatives fd_derivatives_along_path(const NearlySphericalSet& set, double h_t,
                                          double R, int gridres, double mbar,
                                          double munder, double lambda0) {
  if (h_t < 0.05 || h_t > 0.25)
    throw std::invalid_argument("fd_derivatives_along_path: h_t must lie in [0.05, 0.25]");
  PlaneEigenContext ctx(R, gridres, mbar, munder, lambda0);
  PathDerivatives out;
  out.h_t = h_t;
  const std::array<double, 5> ts{-2.0 * h_t, -h_t, 0.0, h_t, 2.0 * h_t};
  std::optional<double> guess = lambda0;
  for (int i = 0; i < 5; ++i) {
    const double t = ts[i];
    const EigenSolution sol =
        ctx.solve([&](double th) { return set.deformed_radius(t, th); }, guess);
    out.lambda_samples[i] = sol.lambda;
    guess = sol.lambda;
  }
  // Least-squares quadratic a + b t + c t^2 through the five samples.
  double s0 = 5, s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  double m0 = 0, m1 = 0, m2 = 0;
  for (int i = 0; i < 5; ++i) {
    const double t = ts[i], y = out.lambda_samples[i];
    s1 += t;
    s2 += t * t;
    s3 += t * t * t;
    s4 += t * t * t * t;
    m0 += y;
    m1 += t * y;
    m2 += t * t * y;
  }
  // Symmetric t-grid: odd sums vanish, the normal equations decouple.
  (void)s1;
  (void)s3;
  const double det = s0 * s4 - s2 * s2;
  out.ldot = m1 / s2;
  out.lddot = 2.0 * (s0 * m2 - s2 * m0) / det;
  return out;
}

}  // namespace bbspectra
