// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef BBSPECTRA_OPTIMIZER_HPP
#define BBSPECTRA_OPTIMIZER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbspectra/assembly.hpp"
#include "bbspectra/eigensolver.hpp"
#include "bbspectra/grid_domain.hpp"
#include "bbspectra/radial.hpp"

namespace bbspectra {

/// Analytic domain description parsed from a tag like "disk:1.0",
/// "ellipse:1.0,0.6", "rectangle:2,1", "stadium:1.0,0.5" (straight length,
/// cap radius) or "lshape:1.0" (L of arm width 1 inside a 2x2 square).
struct DomainSpec {
  std::string tag;
  int dim = 2;
  std::array<double, 3> box_lo{}, box_hi{};
  GridDomain::InsidePredicate inside;
  std::optional<double> analytic_inradius;
  std::optional<std::array<double, 2>> analytic_incenter;

  static DomainSpec parse(const std::string& tag);
  GridDomain make_grid(int gridres) const;
};

struct IncenterField {
  std::vector<double> distance;          // per DOF
  double dstar = 0.0;                    // discrete inradius
  std::vector<std::int64_t> argmax_set;  // DOFs within h/2 of the max
};
IncenterField incenter_field(const GridDomain& domain);

struct OptimizationTrace {
  struct Iteration {
    double lambda;
    std::int64_t favorable_cells;
    std::int64_t cells_changed;
  };
  std::vector<Iteration> iterations;
  enum class Status { fixed_point, tol_reached, maxit } status = Status::maxit;
};

enum class InitKind { incenter_ball, random_seeded, user_mask };

struct OptimizeOptions {
  double tol = 1e-12;  // relative lambda-decrease stop
  int maxit = 500;
  InitKind init = InitKind::incenter_ball;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> user_mask;
  double eigen_tol = 1e-10;
};

struct OptimizeResult {
  std::vector<std::int64_t> favorable;  // sorted DOF indices
  EigenSolution solution;               // for the final set
  OptimizationTrace trace;
};

/// Alternating rearrangement: eigen-solve, then re-select the favorable set
/// as the n_eps cells of largest u (ties by cell index). Monotonically
/// non-increasing lambda; stops at a set fixed point, a sub-tol decrease, or
/// maxit. Throws "epsilon below resolution" when round(eps/h^N) == 0.
OptimizeResult rearrangement_optimize(const GridDomain& domain, double eps, double mbar,
                                      double munder, const OptimizeOptions& opts = {});

struct PolarParametrization {
  std::vector<double> theta;
  std::vector<double> phi;  // blow-up scale: rho(theta) eps^{-1/N} - r0
  double l2 = 0.0;          // ||phi||_{L2(S^1)}
  double linf = 0.0;
  double c1 = 0.0;  // discrete C^1 seminorm (forward differences)
  bool star_shaped = true;
};

/// Per-ray boundary radius of E around `center` by marching with midpoint
/// subcell interpolation of the indicator transition; multiple transitions
/// flag a star-shapedness violation (throws, carrying the flag in the
/// message). Throws if the center cell is not in E.
PolarParametrization extract_polar_parametrization(const GridDomain& domain,
                                                   const std::vector<std::int64_t>& E,
                                                   std::array<double, 2> center,
                                                   int angular_res, double eps);

struct DiagnosticsReport {
  int components_4 = 0;
  int components_8 = 0;
  int strict_local_maxima = 0;
  std::array<double, 2> barycenter{};
  std::array<double, 2> max_point{};
  double barycenter_dist_to_incenter = 0.0;
  double maxpoint_dist_to_incenter = 0.0;
  double scaled_lambda = 0.0;  // eps^{2/N} lambda
  double ratio_to_lambda0 = 0.0;
  double alpha_eps = 0.0;  // min of u over boundary cells of E
};

DiagnosticsReport diagnostics(const GridDomain& domain, const std::vector<std::int64_t>& E,
                              const EigenSolution& solution, double eps, double lambda0,
                              const IncenterField& incenter);

struct BlowupComparison {
  double l2_dist = 0.0;
  double sup_dist = 0.0;
  bool in_asymptotic_regime = true;
};

/// Angular-averaged blow-up rescaling of u around `center`, compared with
/// the limit profile (L2 normalization tag required).
BlowupComparison blowup_compare(const GridDomain& domain, const EigenSolution& solution,
                                double eps, const RadialProfile& profile,
                                std::array<double, 2> center);

struct DomainGapFit {
  double slope = 0.0;
  double target = 0.0;  // -2 sqrt(lambda0 munder) dstar
  std::vector<double> pair_slopes;
  int usable_points = 0;
  bool inconclusive = false;
};

/// Fits log(eps^{2/N} lambda_eps - lambda0) against eps^{-1/N}; sweep points
/// with gap at or below the noise floor are excluded, fewer than 3 usable
/// points yields inconclusive (not an error).
DomainGapFit gap_fit_domain(const std::vector<std::pair<double, double>>& eps_lambda,
                            double lambda0, double munder, double dstar,
                            double noise_floor);

/// P5 PGM raster: outside 0, interior 110, favorable 255.
void write_mask_pgm(const GridDomain& domain, const std::vector<std::int64_t>& E,
                    const std::string& path);
/// Row-wise run-length encoding of the favorable mask.
std::string mask_runlength_json(const GridDomain& domain, const std::vector<std::int64_t>& E);

}  // namespace bbspectra

#endif
