// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bbspectra/modes.hpp"
#include "bbspectra/optimizer.hpp"
#include "bbspectra/perturbation.hpp"
#include "bbspectra/radial.hpp"
#include "bbspectra/xcheck.hpp"

namespace bbspectra {

namespace {

using Clock = std::chrono::steady_clock;
using Status = CriterionResult::Status;

struct Ctx {
  bool quick = false;
  RadialProfile profile_l2;        // L2 tag
  RadialProfile profile_weighted;  // weighted tag
  ModeTable table;
  double lambda0 = 0.0;
  double decay_len = 0.0;
  // Rearrangement traces collected across the battery for criterion 9.
  std::vector<OptimizationTrace> traces;
  // Outcome of the ellipse gap-rate fit, for the honesty criterion.
  DomainGapFit ellipse_fit;
  bool ellipse_fit_ran = false;
  double disk_crosscheck_rel = 1.0;
  bool disk_ran = false;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CriterionResult timed(int id, const std::string& name,
                      const std::function<std::pair<Status, std::string>()>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  const auto start = Clock::now();
  try {
    auto [status, details] = body();
    r.status = status;
    r.details = details;
  } catch (const std::exception& e) {
    r.status = Status::fail;
    r.details = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// ---- criterion bodies ---------------------------------------------------

std::pair<Status, std::string> radial_vs_bessel(Ctx& ctx) {
  const double oracle = xcheck::limit_eigenvalue_2d(1.0, 1.0);
  const double rel = std::abs(ctx.lambda0 - oracle) / oracle;
  const Status s = rel <= 1e-6 ? Status::pass : Status::fail;
  return {s, "lambda0=" + fmt(ctx.lambda0) + " oracle=" + fmt(oracle) +
                 " rel=" + fmt(rel) + " tol=1e-6"};
}

std::pair<Status, std::string> decay_rate_check(Ctx& ctx) {
  const double rate = decay_rate(ctx.profile_l2);
  const double target = -std::sqrt(ctx.lambda0 * 1.0);
  const double rel = std::abs(rate - target) / std::abs(target);
  const Status s = rel <= 0.01 ? Status::pass : Status::fail;
  return {s, "rate=" + fmt(rate) + " target=" + fmt(target) + " rel=" + fmt(rel) +
                 " tol=1%"};
}

std::pair<Status, std::string> finite_ball_gap(Ctx& ctx) {
  std::vector<std::pair<double, double>> samples;
  bool positive = true, decreasing = true;
  double prev = 1e300;
  for (int k = 2; k <= 10; ++k) {
    const double R = ctx.profile_l2.r0 + k * ctx.decay_len;
    const double lam = lambda_finite_ball(2, 1.0, 1.0, R);
    positive = positive && lam > ctx.lambda0;
    decreasing = decreasing && lam < prev;
    prev = lam;
    samples.push_back({R, lam});
  }
  const GapRateFit fit = fit_gap_rate(samples, ctx.lambda0);
  const double target = -2.0 * std::sqrt(ctx.lambda0 * 1.0);
  const double rel = std::abs(fit.slope - target) / std::abs(target);
  const bool ok = positive && decreasing && rel <= 0.05;
  return {ok ? Status::pass : Status::fail,
          "slope=" + fmt(fit.slope) + " target=" + fmt(target) + " rel=" + fmt(rel) +
              " positive=" + (positive ? "yes" : "no") +
              " decreasing=" + (decreasing ? "yes" : "no") + " tol=5%"};
}

std::pair<Status, std::string> mode_battery(Ctx& ctx) {
  // sup-norm agreement of the degree-1 mode with -w'.
  const ModeEntry& g1 = ctx.table.at_degree(1);
  double sup_diff = 0.0, sup_dw = 0.0;
  for (std::size_t i = 0; i < ctx.profile_weighted.r.size(); ++i) {
    sup_diff = std::max(sup_diff, std::abs(g1.g[i] + ctx.profile_weighted.dw[i]));
    sup_dw = std::max(sup_dw, std::abs(ctx.profile_weighted.dw[i]));
  }
  const double rel1 = sup_diff / sup_dw;

  bool ordered = true;
  for (int ell = 2; ell <= 6; ++ell)
    ordered = ordered &&
              ctx.table.at_degree(ell).g_r0 < ctx.table.at_degree(ell - 1).g_r0 - 1e-8;

  const double C = coercivity_constant(ctx.table);
  RadialOptions fine;
  fine.steps_per_scale = 4000.0;
  RadialProfile pf = solve_limit_eigen(2, 1.0, 1.0, 0.0, fine);
  pf.normalize(Normalization::WeightedMass);
  const double C2 = coercivity_constant(build_mode_table(pf, 2));
  const double stab = std::abs(C2 - C) / C;

  const bool ok = rel1 <= 1e-6 && ordered && C > 0.0 && stab <= 1e-6;
  return {ok ? Status::pass : Status::fail,
          "sup_rel(g1 vs -w')=" + fmt(rel1) + " ordered(1..6)=" + (ordered ? "yes" : "no") +
              " C=" + fmt(C) + " refine_rel=" + fmt(stab) + " tols={1e-6, C>0, 1e-6}"};
}

std::pair<Status, std::string> asymmetry_battery(Ctx& ctx) {
  const double r0 = ctx.profile_l2.r0;
  const double R = r0 + 8.0 * ctx.decay_len;
  const int grid = 1024;
  const int coarse_grid =
      std::max(static_cast<int>(std::ceil(128.0 * R / r0)) + 1, 3 * grid / 4);

  // Ratio predictions: gap = lddot/2 at leading order, so the single-mode
  // gap/||phi||^2 target is half the per-unit-coefficient second derivative.
  const double single_mode_pred =
      0.5 * predicted_second_derivative({{2, 1.0}}, ctx.table);
  // Two-sided band: the gap coercivity from below, 10x the largest
  // single-mode ratio over ell <= 6 as the empirical ceiling.
  const double band_low = 0.9 * 0.5 * coercivity_constant(ctx.table);
  const double ceiling =
      10.0 * 0.5 * predicted_second_derivative({{6, 1.0}}, ctx.table);

  PlaneEigenContext fine(R, grid, 1.0, 1.0, ctx.lambda0);
  PlaneEigenContext coarse(R, coarse_grid, 1.0, 1.0, ctx.lambda0);
  const EigenSolution fineB = fine.solve([&](double) { return r0; }, ctx.lambda0);
  const EigenSolution coarseB = coarse.solve([&](double) { return r0; }, ctx.lambda0);

  std::ostringstream details;
  bool violated = false, unresolved = false;
  double smallest_rel = -1.0;
  double ratio_min = 1e300, ratio_max = 0.0;
  for (double sfrac : {0.02, 0.04, 0.08}) {
    PerturbationSpec spec;
    spec.modes.push_back({2, sfrac * r0, 0.0});
    const NearlySphericalSet set = normalize_volume_barycenter(spec);
    auto radius = [&](double th) { return set.radius_at(th); };
    const double gap_fine = fine.solve(radius, fineB.lambda).lambda - fineB.lambda;
    const double gap_coarse = coarse.solve(radius, coarseB.lambda).lambda - coarseB.lambda;
    const double noise = std::abs(gap_fine - gap_coarse);
    const double ratio = gap_fine / (set.phi_l2 * set.phi_l2);
    const bool resolved = gap_fine > noise;
    if (!resolved) {
      unresolved = true;  // coarsened grids flag, they do not fail
    } else {
      if (sfrac == 0.02) smallest_rel = std::abs(ratio - single_mode_pred) / single_mode_pred;
      if (!(ratio >= band_low && ratio <= ceiling)) violated = true;
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
    }
    details << " s=" << sfrac << "r0: ratio=" << fmt(ratio) << " noise_floor="
            << fmt(noise / (set.phi_l2 * set.phi_l2))
            << (resolved ? "" : " UNRESOLVED") << ";";
  }
  if (smallest_rel >= 0.0 && smallest_rel > 0.10) violated = true;
  // Quadratic scaling: gap/||phi||^2 stable across the amplitude ladder.
  const double spread = ratio_max > 0.0 ? (ratio_max - ratio_min) / ratio_min : 0.0;
  if (ratio_max > 0.0 && spread > 0.15) violated = true;
  details << " pred=" << fmt(single_mode_pred) << " rel(smallest s)="
          << (smallest_rel >= 0.0 ? fmt(smallest_rel) : "n/a") << " spread="
          << fmt(spread) << " band=[" << fmt(band_low) << ", " << fmt(ceiling)
          << "] tols={10%, 15% spread}";
  const Status s = violated ? Status::fail : (unresolved ? Status::inconclusive : Status::pass);
  return {s, details.str()};
}

std::pair<Status, std::string> shape_derivative_battery(Ctx& ctx) {
  const double r0 = ctx.profile_l2.r0;
  const double R = r0 + 8.0 * ctx.decay_len;
  const int grid = 768;
  const double h_t = 0.2;

  struct Member {
    const char* name;
    PerturbationSpec spec;
  };
  std::vector<Member> battery;
  {
    Member m1{"ell=2", {}};
    m1.spec.modes.push_back({2, 0.08 * r0, 0.0});
    Member m2{"ell=3", {}};
    m2.spec.modes.push_back({3, 0.0, 0.08 * r0});
    Member m3{"mixed", {}};
    m3.spec.modes.push_back({2, 0.05 * r0, 0.0});
    m3.spec.modes.push_back({3, 0.0, 0.04 * r0});
    battery = {m1, m2, m3};
  }

  PlaneEigenContext plane(R, grid, 1.0, 1.0, ctx.lambda0);
  std::ostringstream details;
  bool ok = true;
  for (const auto& member : battery) {
    const NearlySphericalSet set = normalize_volume_barycenter(member.spec);
    // lambda(t) on the shared grid, five symmetric samples, quadratic fit.
    std::array<double, 5> ts{-2 * h_t, -h_t, 0.0, h_t, 2 * h_t};
    std::array<double, 5> lams{};
    std::optional<double> guess = ctx.lambda0;
    for (int i = 0; i < 5; ++i) {
      const double t = ts[i];
      const EigenSolution sol =
          plane.solve([&](double th) { return set.deformed_radius(t, th); }, guess);
      lams[i] = sol.lambda;
      guess = sol.lambda;
    }
    double s2 = 0, s4 = 0, m0 = 0, m1 = 0, m2 = 0;
    for (int i = 0; i < 5; ++i) {
      s2 += ts[i] * ts[i];
      s4 += ts[i] * ts[i] * ts[i] * ts[i];
      m0 += lams[i];
      m1 += ts[i] * lams[i];
      m2 += ts[i] * ts[i] * lams[i];
    }
    const double ldot = m1 / s2;
    const double lddot = 2.0 * (5.0 * m2 - s2 * m0) / (5.0 * s4 - s2 * s2);

    const SphericalCoefficients coeffs = boundary_velocity_coefficients(set);
    std::vector<HarmonicCoefficient> flat;
    for (std::size_t k = 0; k < 8; ++k) {
      flat.push_back({static_cast<int>(k + 1), coeffs.by_degree[k][0]});
      flat.push_back({static_cast<int>(k + 1), coeffs.by_degree[k][1]});
    }
    const double pred = predicted_second_derivative(flat, ctx.table);
    const double rel = std::abs(lddot - pred) / std::abs(pred);
    const bool first_ok = std::abs(ldot) <= 0.05 * std::abs(lddot) * h_t;
    ok = ok && first_ok && rel <= 0.10;
    details << " " << member.name << ": ldot=" << fmt(ldot) << " lddot=" << fmt(lddot)
            << " pred=" << fmt(pred) << " rel=" << fmt(rel)
            << (first_ok ? "" : " FIRST-ORDER-FAIL") << (rel <= 0.10 ? "" : " SECOND-ORDER-FAIL")
            << ";";
  }
  details << " h_t=" << h_t << " tols={|ldot|<=0.05|lddot|h_t, 10%}";
  return {ok ? Status::pass : Status::fail, details.str()};
}

std::pair<Status, std::string> disk_optimum(Ctx& ctx) {
  const int gridres = 256;
  const DomainSpec spec = DomainSpec::parse("disk:1.0");
  const GridDomain grid = spec.make_grid(gridres);
  // Favorable ball of radius 64h: eps such that r_eps = 0.5 at 256^2.
  const double eps = M_PI * 0.25;
  const OptimizeResult res = rearrangement_optimize(grid, eps, 1.0, 1.0, {});
  ctx.traces.push_back(res.trace);

  double bx = 0, by = 0;
  for (auto d : res.favorable) {
    const auto x = grid.cell_center(grid.cell_of_dof(d));
    bx += x[0];
    by += x[1];
  }
  bx /= res.favorable.size();
  by /= res.favorable.size();
  const double offset = std::hypot(bx, by);

  const double k = std::sqrt(eps);
  const double radial = lambda_finite_ball(2, 1.0, 1.0, 1.0 / k) / (k * k);
  const double rel = std::abs(res.solution.lambda - radial) / radial;
  ctx.disk_crosscheck_rel = rel;
  ctx.disk_ran = true;

  const bool converged = res.trace.status != OptimizationTrace::Status::maxit;
  const bool ok = converged && offset <= 2.0 * grid.spacing() && rel <= 0.01;
  return {ok ? Status::pass : Status::fail,
          "lambda=" + fmt(res.solution.lambda) + " radial=" + fmt(radial) +
              " rel=" + fmt(rel) + " center_offset=" + fmt(offset) + " (2h=" +
              fmt(2.0 * grid.spacing()) + ") iters=" +
              std::to_string(res.trace.iterations.size()) + " tol=1%"};
}

std::pair<Status, std::string> ellipse_battery(Ctx& ctx) {
  const DomainSpec spec = DomainSpec::parse("ellipse:1.0,0.6");
  const std::vector<double> fracs{0.04, 0.02, 0.01, 0.005};

  // Eigenvalue trend on one fixed grid: the relative resolution of the
  // favorable set degrades as eps shrinks, so the (negative) discretization
  // bias grows and the scaled eigenvalue must decrease monotonically while
  // staying within tolerance of lambda0 at the end.
  const int fixed_grid = 768;
  // Geometry trends on jointly refined grids: the blow-up spacing shrinks
  // by 15-25% per step, so rasterization noise decreases together with the
  // true asymmetry and each step clears the measurement jitter.
  const std::vector<int> refined{192, 320, 560, 1024};

  std::ostringstream details;
  bool ok = true;

  // --- fixed-grid sweep: lambda trend, connectivity, maxima ---
  const GridDomain grid = spec.make_grid(fixed_grid);
  const IncenterField inc = incenter_field(grid);
  const double vol = grid.num_dofs() * grid.spacing() * grid.spacing();
  std::vector<std::pair<double, double>> eps_lambda;
  double prev_scaled = 1e300;
  bool lam_decreasing = true, connected = true, single_max = true;
  double last_ratio = 0.0;
  for (double f : fracs) {
    const double eps = f * vol;
    OptimizeOptions opts;
    const OptimizeResult res = rearrangement_optimize(grid, eps, 1.0, 1.0, opts);
    ctx.traces.push_back(res.trace);
    const DiagnosticsReport rep =
        diagnostics(grid, res.favorable, res.solution, eps, ctx.lambda0, inc);
    connected = connected && rep.components_4 == 1 && rep.components_8 == 1;
    single_max = single_max && rep.strict_local_maxima == 1;
    lam_decreasing = lam_decreasing && rep.scaled_lambda < prev_scaled;
    prev_scaled = rep.scaled_lambda;
    last_ratio = rep.ratio_to_lambda0;
    eps_lambda.push_back({eps, res.solution.lambda});
    details << " eps=" << f << "vol: scaled=" << fmt(rep.scaled_lambda) << " comps="
            << rep.components_4 << " maxima=" << rep.strict_local_maxima << ";";
  }
  const bool ratio_ok = std::abs(last_ratio - 1.0) <= 0.05;
  ok = ok && lam_decreasing && connected && single_max && ratio_ok;

  // Gap-rate fit attempt for the honesty criterion: at desk scale the gap
  // sits below the discretization floor and the fit must say so.
  const double floor_est = 0.02 * ctx.lambda0;  // conservative bias bound
  ctx.ellipse_fit = gap_fit_domain(eps_lambda, ctx.lambda0, 1.0, 0.6, floor_est);
  ctx.ellipse_fit_ran = true;

  // --- refined sweep: barycenter drift and asymmetry trend ---
  double prev_bary = 1e300, prev_phi = 1e300;
  bool bary_monotone = true, phi_monotone = true;
  for (std::size_t i = 0; i < fracs.size(); ++i) {
    const GridDomain g = spec.make_grid(refined[i]);
    const IncenterField inc_i = incenter_field(g);
    const double vol_i = g.num_dofs() * g.spacing() * g.spacing();
    const double eps = fracs[i] * vol_i;
    const OptimizeResult res = rearrangement_optimize(g, eps, 1.0, 1.0, {});
    ctx.traces.push_back(res.trace);
    const DiagnosticsReport rep =
        diagnostics(g, res.favorable, res.solution, eps, ctx.lambda0, inc_i);
    const PolarParametrization par = extract_polar_parametrization(
        g, res.favorable, rep.barycenter, 256, eps);
    // Concentration at the incenter: the offset either keeps shrinking or
    // has already hit the sub-half-cell quantization floor of this grid.
    const double bary = rep.barycenter_dist_to_incenter;
    bary_monotone = bary_monotone && (bary < prev_bary || bary <= 0.5 * g.spacing());
    phi_monotone = phi_monotone && par.l2 < prev_phi;
    prev_bary = bary;
    prev_phi = par.l2;
    details << " refined eps=" << fracs[i] << "vol@" << refined[i] << ": bary_dist="
            << fmt(bary) << " (h/2=" << fmt(0.5 * g.spacing()) << ") phi_l2="
            << fmt(par.l2) << ";";
  }
  ok = ok && bary_monotone && phi_monotone;

  details << " lam_decreasing=" << (lam_decreasing ? "yes" : "no")
          << " ratio(last)=" << fmt(last_ratio) << " (tol 5%)"
          << " bary_monotone=" << (bary_monotone ? "yes" : "no")
          << " phi_monotone=" << (phi_monotone ? "yes" : "no");
  return {ok ? Status::pass : Status::fail, details.str()};
}

std::pair<Status, std::string> monotone_traces(Ctx& ctx) {
  std::size_t checked = 0;
  bool ok = true;
  for (const auto& trace : ctx.traces) {
    for (std::size_t i = 1; i < trace.iterations.size(); ++i) {
      ++checked;
      if (trace.iterations[i].lambda >
          trace.iterations[i - 1].lambda + 1e-12 * std::abs(trace.iterations[i].lambda))
        ok = false;
    }
  }
  return {ok ? Status::pass : Status::fail,
          std::to_string(ctx.traces.size()) + " traces, " + std::to_string(checked) +
              " iteration steps, slack 1e-12"};
}

std::pair<Status, std::string> honesty(Ctx& ctx) {
  // The exponential rates of the domain sweep are not resolvable at desk
  // scale; the harness must refuse to fit them while the disk cross-check
  // (exact geometry through the radial oracle) resolves the same quantity.
  if (!ctx.ellipse_fit_ran || !ctx.disk_ran)
    return {Status::inconclusive, "prerequisite sweeps were skipped"};
  const bool refused = ctx.ellipse_fit.inconclusive;
  const bool disk_ok = ctx.disk_crosscheck_rel <= 0.02;
  const bool ok = refused && disk_ok;
  return {ok ? Status::pass : Status::fail,
          std::string("ellipse gap fit: ") + (refused ? "inconclusive (as it must be)" : "fitted (unexpected)") +
              ", usable points=" + std::to_string(ctx.ellipse_fit.usable_points) +
              "; disk cross-check rel=" + fmt(ctx.disk_crosscheck_rel) + " (tol 2%)"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  Ctx ctx;
  ctx.quick = opts.quick;
  ctx.profile_l2 = solve_limit_eigen(2, 1.0, 1.0, 0.0);
  ctx.lambda0 = ctx.profile_l2.lambda0;
  ctx.decay_len = 1.0 / std::sqrt(ctx.lambda0);
  ctx.profile_weighted = ctx.profile_l2;
  ctx.profile_weighted.normalize(Normalization::WeightedMass);
  ctx.table = build_mode_table(ctx.profile_weighted, 8);

  std::vector<CriterionResult> out;
  out.push_back(timed(1, "radial limit eigenvalue vs Bessel oracle",
                      [&] { return radial_vs_bessel(ctx); }));
  out.push_back(timed(2, "eigenfunction decay rate", [&] { return decay_rate_check(ctx); }));
  out.push_back(timed(3, "finite-ball gap: sign, monotonicity, rate",
                      [&] { return finite_ball_gap(ctx); }));
  out.push_back(timed(4, "transmission modes and coercivity constant",
                      [&] { return mode_battery(ctx); }));
  auto add_heavy = [&](int id, const std::string& name,
                       const std::function<std::pair<Status, std::string>()>& body) {
    if (ctx.quick) {
      CriterionResult r;
      r.id = id;
      r.name = name;
      r.status = Status::skipped;
      r.details = "skipped in quick mode";
      out.push_back(r);
    } else {
      out.push_back(timed(id, name, body));
    }
  };
  add_heavy(5, "quantitative asymmetry ratio vs harmonic prediction",
            [&] { return asymmetry_battery(ctx); });
  add_heavy(6, "shape-derivative consistency along deformation paths",
            [&] { return shape_derivative_battery(ctx); });
  add_heavy(7, "disk optimum vs radial cross-check", [&] { return disk_optimum(ctx); });
  add_heavy(8, "ellipse sweep: concentration and sphericity trends",
            [&] { return ellipse_battery(ctx); });
  out.push_back(timed(9, "rearrangement monotonicity across all runs",
                      [&] { return monotone_traces(ctx); }));
  out.push_back(timed(10, "honesty: unresolvable rates flagged, disk rate resolved",
                      [&] { return honesty(ctx); }));
  return out;
}

std::string format_report(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    const char* tag = r.status == Status::pass           ? "[PASS]"
                      : r.status == Status::fail         ? "[FAIL]"
                      : r.status == Status::inconclusive ? "[INCONCLUSIVE]"
                                                         : "[SKIPPED]";
    os << tag << " " << r.id << " " << r.name << " -- " << r.details << " ("
       << fmt(r.seconds) << "s)\n";
  }
  return os.str();
}

std::string report_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    const char* tag = r.status == Status::pass           ? "pass"
                      : r.status == Status::fail         ? "fail"
                      : r.status == Status::inconclusive ? "inconclusive"
                                                         : "skipped";
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"status", tag},
                   {"details", r.details},
                   {"seconds", r.seconds}});
  }
  return nlohmann::json{{"criteria", arr}}.dump(2);
}

bool all_passed(const std::vector<CriterionResult>& results, bool strict) {
  for (const auto& r : results) {
    if (r.status == Status::fail) return false;
    if (strict && r.status == Status::inconclusive) return false;
  }
  return true;
}

}  // namespace bbspectra
