// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_MODES_HPP
#define BBSPECTRA_MODES_HPP

#include <string>
#include <vector>

#include "bbspectra/radial.hpp"

namespace bbspectra {

/// Eigenvalue of -Delta_{S^{N-1}} for spherical-harmonic degree ell.
double laplace_beltrami_eigenvalue(int N, int ell);

/// Radial factor of one transmission mode: solves
///   g'' + (N-1)/r g' + (lambda0 m(r) - sigma/r^2) g = 0  off r0,
/// bounded ~ r^ell at 0, decaying at infinity, continuous at r0 with
/// derivative jump g'(r0^-) - g'(r0^+) = j.
struct ModeEntry {
  int ell = 0;
  double sigma = 0.0;
  double g_r0 = 0.0;
  std::vector<double> g;   // on the profile grid
  std::vector<double> dg;  // derivative, inner-leg value at the r0 node
};

/// Per-degree mode solutions plus the derived constants. The reference
/// profile must carry the weighted-mass normalization.
struct ModeTable {
  int dim = 2;
  double lambda0 = 0.0, mbar = 1.0, munder = 1.0, r0 = 0.0;
  double w_r0 = 0.0;
  double jump = 0.0;  // j = lambda0 (mbar+munder) w(r0)
  std::vector<ModeEntry> entries;  // degrees 1..lmax

  const ModeEntry& at_degree(int ell) const;
};

/// Throws "resonant mode" if the continuity/jump system degenerates.
ModeEntry solve_mode(const RadialProfile& profile, double sigma, int ell);

ModeTable build_mode_table(const RadialProfile& profile, int lmax);

/// Coercivity constant of the second shape derivative at the ball:
///   C = 2 lambda0 (mbar+munder) w(r0) r0^{N-1} [g_1(r0) - g_2(r0)],
/// degrees 1 and 2. Throws if nonpositive (would signal a solver bug).
double coercivity_constant(const ModeTable& table);

/// One harmonic coefficient of the boundary velocity in the orthonormal
/// L2(S^{N-1}) basis. Orders within a degree are interchangeable here: only
/// the degree enters the prediction.
struct HarmonicCoefficient {
  int degree = 0;
  double value = 0.0;
};

/// Second t-derivative of the eigenvalue at the ball for a volume- and
/// barycenter-normalized deformation with boundary-velocity coefficients c:
///   2 lambda0 (mbar+munder) w(r0) r0^{N-1} sum_k (g_1(r0) - g_k(r0)) c_k^2.
/// Degree-1 contributions cancel exactly. Requires every degree present in
/// the table; degree-0 content beyond roundoff is rejected.
double predicted_second_derivative(const std::vector<HarmonicCoefficient>& coeffs,
                                   const ModeTable& table);

/// Relative defect of the two-mode Sturm exchange identity over (0, R):
///   (sigma_k - sigma_h) int r^{N-3} g_h g_k dr
///     + j r0^{N-1} (g_k(r0) - g_h(r0))  =  [r^{N-1}(g_k' g_h - g_h' g_k)]_0^R.
double sturm_residual(const RadialProfile& profile, const ModeTable& table, int ell_h,
                      int ell_k);

void write_mode_table_csv(const ModeTable& table, const std::string& path);
std::string mode_table_summary_json(const ModeTable& table);

}  // namespace bbspectra

#endif
