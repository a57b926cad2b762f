// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_RADIAL_HPP
#define BBSPECTRA_RADIAL_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bbspectra/eigensolver.hpp"  // Normalization

namespace bbspectra {

/// Radius of the ball of unit Lebesgue measure in R^N.
double unit_ball_radius(int N);
/// Surface area of the unit sphere S^{N-1} in R^N.
double unit_sphere_area(int N);

/// Eigenpair of the limit problem on R^N truncated at R: the weight is mbar
/// inside the unit-measure ball B_{r0} and -munder outside. The grid contains
/// r0 and R as exact nodes; w is C^1-matched at r0.
struct RadialProfile {
  int dim = 2;
  double mbar = 1.0, munder = 1.0;
  double r0 = 0.0;
  double lambda0 = 0.0;
  double R = 0.0;
  Normalization norm_tag = Normalization::L2Domain;
  std::vector<double> r;
  std::vector<double> w;
  std::vector<double> dw;
  std::size_t i_r0 = 0;        // index of the r0 node
  double match_defect = 0.0;   // relative C^1 defect at r0

  double w_r0() const { return w[i_r0]; }
  double dw_r0() const { return dw[i_r0]; }
  /// Linear interpolation on the profile grid (0 beyond R).
  double value_at(double radius) const;
  /// Switches normalization in place (L2(R^N) or weighted mass = 1).
  void normalize(Normalization tag);
};

struct RadialOptions {
  double tol = 1e-13;       // relative bisection tolerance on lambda
  double steps_per_scale = 2000.0;  // fixed-step resolution per min(r0, decay length)
};

/// Solves the limit eigenproblem by shooting: regular series-started inner
/// leg, asymptotically seeded decaying outer leg, bisection on the C^1
/// matching defect at r0. R below r0 + 12 decay lengths is auto-enlarged.
RadialProfile solve_limit_eigen(int N, double mbar, double munder, double R,
                                const RadialOptions& opts = {});

/// Principal eigenvalue of the concentric problem on the ball B_R (hard
/// Dirichlet condition at R), favorable set B_{r0}. Requires R > r0.
double lambda_finite_ball(int N, double mbar, double munder, double R,
                          const RadialOptions& opts = {});

struct GapRateFit {
  double slope = 0.0;                 // least-squares slope of log(gap) vs R
  std::vector<double> pair_slopes;    // consecutive two-point slopes
};

/// Fits the exponential rate of Lambda(R) - lambda0. Requires >= 4 samples
/// with gap above 10x the solver tolerance (absolute, scaled by lambda0);
/// throws "resolution exceeded" otherwise.
GapRateFit fit_gap_rate(const std::vector<std::pair<double, double>>& samples,
                        double lambda0, double solver_tol = 1e-13);

/// Least-squares slope of log(w(r) r^{(N-1)/2}) over the outer third of the
/// grid, underflow excluded. Expected -sqrt(lambda0 * munder).
double decay_rate(const RadialProfile& profile);

/// CSV export: header line then "r,w" rows, 17 significant digits.
void write_profile_csv(const RadialProfile& profile, const std::string& path);
/// Summary JSON text: {N, mbar, munder, r0, lambda0, R, norm_tag}.
std::string profile_summary_json(const RadialProfile& profile);

}  // namespace bbspectra

#endif
