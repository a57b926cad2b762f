// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_PERTURBATION_HPP
#define BBSPECTRA_PERTURBATION_HPP

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "bbspectra/assembly.hpp"
#include "bbspectra/eigensolver.hpp"
#include "bbspectra/grid_domain.hpp"
#include "bbspectra/modes.hpp"
#include "bbspectra/radial.hpp"

namespace bbspectra {

/// Angular perturbation of the unit-measure disk boundary (N=2 Fourier
/// basis). User content lives in modes k >= 2; constant and degree-1 terms
/// are reserved for the volume and barycenter normalization.
struct PerturbationSpec {
  struct Mode {
    int k = 2;
    double a_cos = 0.0;
    double b_sin = 0.0;
  };
  std::vector<Mode> modes;
  double amplitude = 1.0;  // global scale applied to all modes
};

/// Volume- and barycenter-normalized star-shaped set r < r0 + phi(theta).
struct NearlySphericalSet {
  double r0 = 0.0;
  double c0 = 0.0;            // volume-fixing constant mode
  double d1 = 0.0, e1 = 0.0;  // barycenter-fixing degree-1 modes
  std::vector<PerturbationSpec::Mode> modes;  // amplitude-scaled user modes

  std::vector<double> theta;  // uniform angular grid (power of two)
  std::vector<double> phi;    // phi(theta_j)
  double phi_l2 = 0.0;        // ||phi||_{L2(S^1)}
  double phi_inf = 0.0;
  double phi_c1 = 0.0;        // sup |phi'|, evaluated spectrally

  double phi_at(double theta) const;
  double radius_at(double theta) const { return r0 + phi_at(theta); }
  /// Boundary radius of the deformed set Phi(t, B).
  double deformed_radius(double t, double theta) const;
  /// Measure of Phi(t, B) by exact angular quadrature of rho^N/N.
  double deformed_measure(double t) const;
};

/// Alternating projection: closed-form constant mode zeroing the exact
/// volume defect, Newton step on the degree-1 moment, repeated until both
/// residuals fall below 1e-12 (at most 20 sweeps).
/// Throws "amplitude too large" (||phi||_inf > r0/2 or no volume root) and
/// "normalization failure" (alternation did not converge).
NearlySphericalSet normalize_volume_barycenter(const PerturbationSpec& spec,
                                               int angular_grid = 2048);

/// Radial component of the divergence-free transport field:
///   X(rho, theta) = [(r0+phi(theta))^N - r0^N] / (N rho^{N-1}).
double vector_field_X(const NearlySphericalSet& set, double rho, double theta);

/// Deformation map Phi(t, rho theta) =
///   [rho^N + t h(rho) ((r0+phi)^N - r0^N)]^{1/N} theta
/// with a C^2 smoothstep cutoff h (1 on [3r0/4, 5r0/4], 0 outside
/// (r0/2, 3r0/2)). Returns the mapped radius; the angle is unchanged.
/// Throws "deformation too large" when the bracket under the root is
/// nonpositive.
double deformation_map_radius(const NearlySphericalSet& set, double t, double rho,
                              double theta);
/// Cartesian form: maps the point (x, y); the angle is left unchanged.
std::array<double, 2> deformation_map(const NearlySphericalSet& set, double t, double x,
                                      double y);

/// Orthonormal L2(S^{N-1}) coefficients of a boundary trace sampled on a
/// power-of-two uniform grid. Index 0 is the constant mode; degree k >= 1
/// contributes a (cos, sin) pair.
struct SphericalCoefficients {
  double c0 = 0.0;
  std::vector<std::array<double, 2>> by_degree;  // [k-1] -> {cos, sin}

  double sum_squares() const;
  std::vector<HarmonicCoefficient> flatten() const;  // for the mode prediction
};
SphericalCoefficients spherical_coefficients(const std::vector<double>& trace);

/// Grid context for plane eigenvalue experiments: Dirichlet disk of radius R,
/// stiffness assembled and analyzed once, favorable sets rasterized with an
/// exact cell count (the n_eps cells of smallest signed boundary excess).
class PlaneEigenContext {
public:
  PlaneEigenContext(double R, int gridres, double mbar, double munder, double lambda0);

  /// Favorable set {x : |x| < boundary_radius(atan2(y,x))}, count-exact.
  EigenSolution solve(const std::function<double(double)>& boundary_radius,
                      std::optional<double> lambda_guess = {});
  /// General membership key (negative inside); used for shifted sets.
  EigenSolution solve_key(const std::function<double(double, double)>& key,
                          std::optional<double> lambda_guess = {});

  const GridDomain& domain() const { return domain_; }
  double spacing() const { return domain_.spacing(); }

private:
  GridDomain domain_;
  SparseSymmetric K_;
  ShiftedCholesky chol_;
  double mbar_, munder_, lambda0_;
  std::int64_t n_eps_;
  std::vector<double> rad_, th_;  // per-DOF polar coordinates
};

struct PlaneGapResult {
  double lambda_A = 0.0;
  double lambda_B = 0.0;
  double gap = 0.0;
  double h = 0.0;
  std::int64_t dofs = 0;
};

/// lambda^1 of the perturbed set and of the ball on the identical grid, so
/// the gap cancels the leading discretization error.
PlaneGapResult eigenvalue_on_plane(const NearlySphericalSet& set, double R, int gridres,
                                   double mbar, double munder, double lambda0);

struct AsymmetryRecord {
  double gap = 0.0;
  double phi_l2_sq = 0.0;
  double ratio = 0.0;
  double noise_floor = 0.0;  // |gap(fine) - gap(coarse)|
  double lambda_A = 0.0, lambda_B = 0.0;
  bool inconclusive = false;  // gap below the noise floor
};

/// Gap, squared perturbation norm and their ratio, with a two-resolution
/// noise-floor estimate.
AsymmetryRecord asymmetry_ratio(const NearlySphericalSet& set, double R, int gridres,
                                double mbar, double munder, double lambda0);

struct PathDerivatives {
  double ldot = 0.0;
  double lddot = 0.0;
  std::array<double, 5> lambda_samples{};  // t = -2h,-h,0,h,2h
  double h_t = 0.0;
};

/// Central-difference derivatives of t -> lambda^1(Phi(t,B)) on a single
/// grid: least-squares quadratic through five symmetric samples.
PathDerivatives fd_derivatives_along_path(const NearlySphericalSet& set, double h_t,
                                          double R, int gridres, double mbar,
                                          double munder, double lambda0);

/// Boundary-velocity coefficients of the set (trace of X . n at r0),
/// evaluated on the set's own angular grid.
SphericalCoefficients boundary_velocity_coefficients(const NearlySphericalSet& set);

}  // namespace bbspectra

#endif
