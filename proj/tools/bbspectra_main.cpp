// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: radial limit solves, transmission modes,
// nearly-spherical asymmetry experiments, favorable-set optimization sweeps
// and the verification battery. TOML config files plus flag overrides
// (flags win); numeric outputs are deterministic for identical configs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bbspectra/acceptance.hpp"
#include "bbspectra/experiment.hpp"
#include "bbspectra/modes.hpp"
#include "bbspectra/optimizer.hpp"
#include "bbspectra/perturbation.hpp"
#include "bbspectra/radial.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using bbspectra::format_double17;

struct RunContext {
  std::string out_dir = ".";
  std::string hash;
  std::string config_echo;
  std::vector<bbspectra::ManifestEntry> artifacts;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  std::string path(const std::string& name) const {
    return (fs::path(out_dir) / name).string();
  }
  void note(const std::string& kind, const std::string& p) { artifacts.push_back({kind, p}); }
  void finish() {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bbspectra::write_manifest(path("manifest.json"), config_echo, hash, wall, artifacts);
  }
};

std::string echo_config(const std::string& sub, const std::map<std::string, std::string>& kv) {
  std::ostringstream os;
  os << sub;
  for (const auto& [k, v] : kv) os << " " << k << "=" << v;
  return os.str();
}

void write_json_artifact(RunContext& ctx, const std::string& name, json j,
                         const std::string& kind) {
  j["config_hash"] = ctx.hash;
  bbspectra::atomic_write_file(ctx.path(name), j.dump(2) + "\n");
  ctx.note(kind, ctx.path(name));
}

void write_csv_artifact(RunContext& ctx, const std::string& name, const std::string& header,
                        const std::vector<std::vector<double>>& rows,
                        const std::string& kind) {
  std::ostringstream os;
  os << "# config_hash=" << ctx.hash << "\n" << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_double17(row[i]);
    os << "\n";
  }
  bbspectra::atomic_write_file(ctx.path(name), os.str());
  ctx.note(kind, ctx.path(name));
}

// ---- subcommand payloads -------------------------------------------------

struct LimitArgs {
  int dim = 2;
  double mbar = 1.0, munder = 1.0, R = 0.0, tol = 1e-13;
};

int run_limit(const LimitArgs& a, RunContext& ctx) {
  const double r0 = bbspectra::unit_ball_radius(a.dim);
  if (a.R != 0.0 && a.R < r0)
    throw CLI::ValidationError("--R", "truncation radius below the unit-measure ball radius");
  bbspectra::RadialOptions opts;
  opts.tol = a.tol;
  const bbspectra::RadialProfile p = bbspectra::solve_limit_eigen(a.dim, a.mbar, a.munder, a.R, opts);

  bbspectra::write_profile_csv(p, ctx.path("profile.csv"));
  ctx.note("profile_csv", ctx.path("profile.csv"));
  json j = json::parse(bbspectra::profile_summary_json(p));
  j["decay_rate_fit"] = bbspectra::decay_rate(p);
  write_json_artifact(ctx, "limit_summary.json", j, "limit_summary");
  std::printf("lambda0 = %s (N=%d, mbar=%s, munder=%s, R=%s)\n",
              format_double17(p.lambda0).c_str(), p.dim, format_double17(p.mbar).c_str(),
              format_double17(p.munder).c_str(), format_double17(p.R).c_str());
  return 0;
}

struct ModesArgs {
  int dim = 2;
  int lmax = 6;
  double mbar = 1.0, munder = 1.0;
};

int run_modes(const ModesArgs& a, RunContext& ctx) {
  bbspectra::RadialProfile p = bbspectra::solve_limit_eigen(a.dim, a.mbar, a.munder, 0.0);
  p.normalize(bbspectra::Normalization::WeightedMass);
  const bbspectra::ModeTable table = bbspectra::build_mode_table(p, a.lmax);

  std::vector<std::vector<double>> rows;
  for (const auto& e : table.entries)
    rows.push_back({static_cast<double>(e.ell), e.sigma, e.g_r0});
  write_csv_artifact(ctx, "modes.csv", "ell,sigma,g_r0", rows, "mode_table");
  write_json_artifact(ctx, "modes_summary.json",
                      json::parse(bbspectra::mode_table_summary_json(table)), "mode_summary");
  return 0;
}

struct AsymmetryArgs {
  std::vector<int> modes{2};
  std::vector<double> amps{0.02, 0.04, 0.08};
  int grid = 1024;
  double rdecay = 8.0;
  double mbar = 1.0, munder = 1.0;
};

int run_asymmetry(const AsymmetryArgs& a, RunContext& ctx) {
  bbspectra::RadialProfile p = bbspectra::solve_limit_eigen(2, a.mbar, a.munder, 0.0);
  const double lambda0 = p.lambda0;
  const double r0 = p.r0;
  p.normalize(bbspectra::Normalization::WeightedMass);
  const int lmax = std::max(6, *std::max_element(a.modes.begin(), a.modes.end()));
  const bbspectra::ModeTable table = bbspectra::build_mode_table(p, lmax);
  const double R = r0 + a.rdecay / std::sqrt(lambda0 * a.munder);

  json records = json::array();
  std::vector<std::vector<double>> rows;
  for (double amp : a.amps) {
    bbspectra::PerturbationSpec spec;
    for (int k : a.modes) spec.modes.push_back({k, amp * r0, 0.0});
    const bbspectra::NearlySphericalSet set = bbspectra::normalize_volume_barycenter(spec);
    const bbspectra::AsymmetryRecord rec =
        bbspectra::asymmetry_ratio(set, R, a.grid, a.mbar, a.munder, lambda0);

    // Prediction from the boundary-velocity coefficients of this set.
    const bbspectra::SphericalCoefficients coeffs =
        bbspectra::boundary_velocity_coefficients(set);
    std::vector<bbspectra::HarmonicCoefficient> flat;
    for (int k = 1; k <= lmax; ++k) {
      flat.push_back({k, coeffs.by_degree[k - 1][0]});
      flat.push_back({k, coeffs.by_degree[k - 1][1]});
    }
    const double pred_gap = 0.5 * bbspectra::predicted_second_derivative(flat, table);
    const double pred_ratio =
        set.phi_l2 > 0.0 ? pred_gap / (set.phi_l2 * set.phi_l2) : 0.0;

    json r;
    r["spec"] = {{"modes", a.modes}, {"amplitude_over_r0", amp}};
    r["R"] = R;
    r["gridres"] = a.grid;
    r["lambdaA"] = rec.lambda_A;
    r["lambdaB"] = rec.lambda_B;
    r["gap"] = rec.gap;
    r["phi_l2"] = set.phi_l2;
    r["ratio"] = rec.ratio;
    r["prediction"] = pred_ratio;
    r["noise_floor"] = rec.noise_floor;
    r["inconclusive"] = rec.inconclusive;
    records.push_back(r);
    rows.push_back({amp, rec.lambda_A, rec.lambda_B, rec.gap, set.phi_l2, rec.ratio,
                    pred_ratio, rec.noise_floor});
    std::printf("amp=%gr0: gap=%s ratio=%s prediction=%s%s\n", amp,
                format_double17(rec.gap).c_str(), format_double17(rec.ratio).c_str(),
                format_double17(pred_ratio).c_str(), rec.inconclusive ? " [inconclusive]" : "");
  }
  write_json_artifact(ctx, "asymmetry_records.json", json{{"records", records}},
                      "asymmetry_records");
  write_csv_artifact(ctx, "asymmetry.csv",
                     "amp_over_r0,lambdaA,lambdaB,gap,phi_l2,ratio,prediction,noise_floor",
                     rows, "asymmetry_table");
  return 0;
}

struct OptimizeArgs {
  std::string domain = "disk:1.0";
  double eps = 0.01;  // fraction of the domain measure
  int grid = 256;
  double mbar = 1.0, munder = 1.0, tol = 1e-12;
  int maxit = 500;
  std::string init = "incenter";
  std::uint64_t seed = 0;
};

int run_optimize(const OptimizeArgs& a, RunContext& ctx) {
  const bbspectra::DomainSpec spec = bbspectra::DomainSpec::parse(a.domain);
  const bbspectra::GridDomain grid = spec.make_grid(a.grid);
  const double vol = grid.num_dofs() * std::pow(grid.spacing(), grid.dim());
  const double eps = a.eps * vol;

  bbspectra::OptimizeOptions opts;
  opts.tol = a.tol;
  opts.maxit = a.maxit;
  opts.seed = a.seed;
  opts.init = a.init == "random" ? bbspectra::InitKind::random_seeded
                                 : bbspectra::InitKind::incenter_ball;
  const bbspectra::OptimizeResult res =
      bbspectra::rearrangement_optimize(grid, eps, a.mbar, a.munder, opts);

  const bbspectra::RadialProfile profile =
      bbspectra::solve_limit_eigen(2, a.mbar, a.munder, 0.0);
  const bbspectra::IncenterField inc = bbspectra::incenter_field(grid);
  const bbspectra::DiagnosticsReport rep = bbspectra::diagnostics(
      grid, res.favorable, res.solution, eps, profile.lambda0, inc);

  bbspectra::write_mask_pgm(grid, res.favorable, ctx.path("mask.pgm"));
  ctx.note("mask_pgm", ctx.path("mask.pgm"));
  bbspectra::atomic_write_file(ctx.path("mask_rle.json"),
                               bbspectra::mask_runlength_json(grid, res.favorable) + "\n");
  ctx.note("mask_rle", ctx.path("mask_rle.json"));

  json diag;
  diag["domain"] = a.domain;
  diag["eps_fraction"] = a.eps;
  diag["eps"] = eps;
  diag["gridres"] = a.grid;
  diag["lambda"] = res.solution.lambda;
  diag["scaled_lambda"] = rep.scaled_lambda;
  diag["ratio_to_lambda0"] = rep.ratio_to_lambda0;
  diag["components"] = rep.components_4;
  diag["components_8"] = rep.components_8;
  diag["strict_local_maxima"] = rep.strict_local_maxima;
  diag["barycenter"] = {rep.barycenter[0], rep.barycenter[1]};
  diag["barycenter_dist_to_incenter"] = rep.barycenter_dist_to_incenter;
  diag["maxpoint_dist_to_incenter"] = rep.maxpoint_dist_to_incenter;
  diag["alpha_eps"] = rep.alpha_eps;
  diag["dstar_h"] = inc.dstar;
  diag["iterations"] = res.trace.iterations.size();
  diag["status"] = res.trace.status == bbspectra::OptimizationTrace::Status::fixed_point
                       ? "fixed_point"
                   : res.trace.status == bbspectra::OptimizationTrace::Status::tol_reached
                       ? "tol_reached"
                       : "maxit";
  write_json_artifact(ctx, "diagnostics.json", diag, "diagnostics");

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < res.trace.iterations.size(); ++i)
    rows.push_back({static_cast<double>(i), res.trace.iterations[i].lambda,
                    static_cast<double>(res.trace.iterations[i].cells_changed)});
  write_csv_artifact(ctx, "trace.csv", "iteration,lambda,cells_changed", rows, "trace");
  std::printf("lambda = %s components=%d maxima=%d status=%s\n",
              format_double17(res.solution.lambda).c_str(), rep.components_4,
              rep.strict_local_maxima, diag["status"].get<std::string>().c_str());
  return 0;
}

struct SweepArgs {
  std::string domain = "ellipse:1.0,0.6";
  std::vector<double> eps{0.04, 0.02, 0.01, 0.005};
  std::vector<int> grids;  // optional per-eps; single value broadcast
  int grid = 512;
  double mbar = 1.0, munder = 1.0;
};

int run_sweep(const SweepArgs& a, RunContext& ctx) {
  const bbspectra::DomainSpec spec = bbspectra::DomainSpec::parse(a.domain);
  const bbspectra::RadialProfile profile =
      bbspectra::solve_limit_eigen(2, a.mbar, a.munder, 0.0);

  std::vector<int> grids = a.grids;
  if (grids.empty()) grids.assign(a.eps.size(), a.grid);
  if (grids.size() == 1) grids.assign(a.eps.size(), grids[0]);
  if (grids.size() != a.eps.size())
    throw CLI::ValidationError("--grids", "needs one entry per eps value");

  // One job per sweep point, results ordered by input position.
  std::vector<std::function<std::string()>> jobs;
  for (std::size_t i = 0; i < a.eps.size(); ++i) {
    const double frac = a.eps[i];
    const int gridres = grids[i];
    jobs.push_back([&, frac, gridres]() -> std::string {
      const bbspectra::GridDomain grid = spec.make_grid(gridres);
      const double vol = grid.num_dofs() * std::pow(grid.spacing(), grid.dim());
      const double eps = frac * vol;
      const bbspectra::OptimizeResult res =
          bbspectra::rearrangement_optimize(grid, eps, a.mbar, a.munder, {});
      const bbspectra::IncenterField inc = bbspectra::incenter_field(grid);
      const bbspectra::DiagnosticsReport rep = bbspectra::diagnostics(
          grid, res.favorable, res.solution, eps, profile.lambda0, inc);
      const bbspectra::PolarParametrization par = bbspectra::extract_polar_parametrization(
          grid, res.favorable, rep.barycenter, 256, eps);
      json j;
      j["eps_fraction"] = frac;
      j["eps"] = eps;
      j["gridres"] = gridres;
      j["lambda"] = res.solution.lambda;
      j["scaled_lambda"] = rep.scaled_lambda;
      j["ratio_to_lambda0"] = rep.ratio_to_lambda0;
      j["components"] = rep.components_4;
      j["strict_local_maxima"] = rep.strict_local_maxima;
      j["barycenter_dist_to_incenter"] = rep.barycenter_dist_to_incenter;
      j["phi_l2_blowup"] = par.l2;
      j["phi_linf_blowup"] = par.linf;
      j["alpha_eps"] = rep.alpha_eps;
      return j.dump();
    });
  }
  const std::vector<std::string> outputs = bbspectra::run_ordered(jobs);

  json points = json::array();
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<double, double>> eps_lambda;
  for (const auto& s : outputs) {
    json j = json::parse(s);
    points.push_back(j);
    rows.push_back({j["eps_fraction"].get<double>(), static_cast<double>(j["gridres"].get<int>()),
                    j["lambda"].get<double>(), j["scaled_lambda"].get<double>(),
                    j["ratio_to_lambda0"].get<double>(),
                    static_cast<double>(j["components"].get<int>()),
                    static_cast<double>(j["strict_local_maxima"].get<int>()),
                    j["barycenter_dist_to_incenter"].get<double>(),
                    j["phi_l2_blowup"].get<double>()});
    eps_lambda.push_back({j["eps"].get<double>(), j["lambda"].get<double>()});
    std::printf("eps=%gvol grid=%d scaled_lambda=%s ratio=%s\n",
                j["eps_fraction"].get<double>(), j["gridres"].get<int>(),
                format_double17(j["scaled_lambda"].get<double>()).c_str(),
                format_double17(j["ratio_to_lambda0"].get<double>()).c_str());
  }
  write_csv_artifact(
      ctx, "sweep.csv",
      "eps_fraction,gridres,lambda,scaled_lambda,ratio_to_lambda0,components,"
      "strict_local_maxima,barycenter_dist_to_incenter,phi_l2_blowup",
      rows, "sweep_table");

  const double dstar = spec.analytic_inradius.value_or(0.0);
  json summary;
  summary["points"] = points;
  if (dstar > 0.0) {
    const bbspectra::DomainGapFit fit = bbspectra::gap_fit_domain(
        eps_lambda, profile.lambda0, a.munder, dstar, 0.02 * profile.lambda0);
    summary["gap_fit"] = {{"inconclusive", fit.inconclusive},
                          {"usable_points", fit.usable_points},
                          {"slope", fit.slope},
                          {"target", fit.target}};
  }
  write_json_artifact(ctx, "sweep_summary.json", summary, "sweep_summary");
  return 0;
}

int run_verify(bool quick, bool strict, RunContext& ctx) {
  bbspectra::AcceptanceOptions opts;
  opts.quick = quick;
  const auto results = bbspectra::run_acceptance(opts);
  std::fputs(bbspectra::format_report(results).c_str(), stdout);
  json j = json::parse(bbspectra::report_json(results));
  write_json_artifact(ctx, "verify_report.json", j, "verify_report");
  return bbspectra::all_passed(results, strict) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bang-bang weighted eigenvalue experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // parent options (--out) usable after the subcommand
  app.set_config("--config", "", "TOML config file (flags override)");

  std::string out_dir = ".";
  app.add_option("--out", out_dir, "output directory")->capture_default_str();

  LimitArgs limit;
  auto* climit = app.add_subcommand("limit", "solve the radial limit eigenproblem");
  climit->add_option("--dim", limit.dim)->check(CLI::IsMember({2, 3}))->required();
  climit->add_option("--mbar", limit.mbar)->check(CLI::PositiveNumber)->required();
  climit->add_option("--munder", limit.munder)->check(CLI::PositiveNumber)->required();
  climit->add_option("--R", limit.R, "truncation radius (0 = auto)");
  climit->add_option("--tol", limit.tol)->check(CLI::PositiveNumber);

  ModesArgs modes;
  auto* cmodes = app.add_subcommand("modes", "solve the transmission mode table");
  cmodes->add_option("--lmax", modes.lmax)->check(CLI::Range(1, 64))->required();
  cmodes->add_option("--dim", modes.dim)->check(CLI::IsMember({2, 3}));
  cmodes->add_option("--mbar", modes.mbar)->check(CLI::PositiveNumber);
  cmodes->add_option("--munder", modes.munder)->check(CLI::PositiveNumber);

  AsymmetryArgs asym;
  auto* casym = app.add_subcommand("asymmetry", "nearly-spherical gap experiments");
  casym->add_option("--mode", asym.modes, "harmonic mode numbers (k >= 2)")
      ->delimiter(',')
      ->check(CLI::Range(2, 32));
  casym->add_option("--amps", asym.amps, "amplitudes as fractions of r0")
      ->delimiter(',')
      ->required()
      ->check(CLI::Range(0.0, 0.5));
  casym->add_option("--grid", asym.grid)->check(CLI::Range(64, 8192));
  casym->add_option("--rdecay", asym.rdecay, "truncation in decay lengths past r0")
      ->check(CLI::PositiveNumber);
  casym->add_option("--mbar", asym.mbar)->check(CLI::PositiveNumber);
  casym->add_option("--munder", asym.munder)->check(CLI::PositiveNumber);

  OptimizeArgs opt;
  auto* copt = app.add_subcommand("optimize", "favorable-set rearrangement on a domain");
  copt->add_option("--domain", opt.domain, "disk:r | ellipse:a,b | rectangle:w,h | "
                                           "stadium:L,r | lshape:s")
      ->required();
  copt->add_option("--eps", opt.eps, "favorable fraction of the domain measure")
      ->required()
      ->check(CLI::Range(1e-9, 1.0));
  copt->add_option("--grid", opt.grid)->check(CLI::Range(16, 8192));
  copt->add_option("--mbar", opt.mbar)->check(CLI::PositiveNumber);
  copt->add_option("--munder", opt.munder)->check(CLI::PositiveNumber);
  copt->add_option("--tol", opt.tol)->check(CLI::PositiveNumber);
  copt->add_option("--maxit", opt.maxit)->check(CLI::Range(1, 100000));
  copt->add_option("--init", opt.init)->check(CLI::IsMember({"incenter", "random"}));
  copt->add_option("--seed", opt.seed);

  SweepArgs sweep;
  auto* csweep = app.add_subcommand("sweep", "eps sweep with diagnostics table");
  csweep->add_option("--domain", sweep.domain)->required();
  csweep->add_option("--eps", sweep.eps, "fractions of the domain measure")
      ->delimiter(',')
      ->required()
      ->check(CLI::Range(1e-9, 1.0));
  csweep->add_option("--grids", sweep.grids, "per-eps grid resolutions")->delimiter(',');
  csweep->add_option("--grid", sweep.grid)->check(CLI::Range(16, 8192));
  csweep->add_option("--mbar", sweep.mbar)->check(CLI::PositiveNumber);
  csweep->add_option("--munder", sweep.munder)->check(CLI::PositiveNumber);

  bool quick = false, strict = false;
  auto* cverify = app.add_subcommand("verify", "run the acceptance battery");
  cverify->add_flag("--quick", quick, "reduced battery, a couple of minutes");
  cverify->add_flag("--strict", strict, "inconclusive criteria flip the exit code");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  RunContext ctx;
  ctx.out_dir = out_dir;
  std::error_code ec;
  fs::create_directories(ctx.out_dir, ec);

  try {
    int rc = 0;
    if (climit->parsed()) {
      std::map<std::string, std::string> kv{{"dim", std::to_string(limit.dim)},
                                            {"mbar", format_double17(limit.mbar)},
                                            {"munder", format_double17(limit.munder)},
                                            {"R", format_double17(limit.R)},
                                            {"tol", format_double17(limit.tol)}};
      ctx.config_echo = echo_config("limit", kv);
      ctx.hash = bbspectra::config_hash(ctx.config_echo);
      rc = run_limit(limit, ctx);
    } else if (cmodes->parsed()) {
      std::map<std::string, std::string> kv{{"dim", std::to_string(modes.dim)},
                                            {"lmax", std::to_string(modes.lmax)},
                                            {"mbar", format_double17(modes.mbar)},
                                            {"munder", format_double17(modes.munder)}};
      ctx.config_echo = echo_config("modes", kv);
      ctx.hash = bbspectra::config_hash(ctx.config_echo);
      rc = run_modes(modes, ctx);
    } else if (casym->parsed()) {
      std::ostringstream amps, mods;
      for (double v : asym.amps) amps << format_double17(v) << ";";
      for (int k : asym.modes) mods << k << ";";
      std::map<std::string, std::string> kv{{"modes", mods.str()},
                                            {"amps", amps.str()},
                                            {"grid", std::to_string(asym.grid)},
                                            {"rdecay", format_double17(asym.rdecay)},
                                            {"mbar", format_double17(asym.mbar)},
                                            {"munder", format_double17(asym.munder)}};
      ctx.config_echo = echo_config("asymmetry", kv);
      ctx.hash = bbspectra::config_hash(ctx.config_echo);
      rc = run_asymmetry(asym, ctx);
    } else if (copt->parsed()) {
      std::map<std::string, std::string> kv{{"domain", opt.domain},
                                            {"eps", format_double17(opt.eps)},
                                            {"grid", std::to_string(opt.grid)},
                                            {"mbar", format_double17(opt.mbar)},
                                            {"munder", format_double17(opt.munder)},
                                            {"init", opt.init},
                                            {"seed", std::to_string(opt.seed)}};
      ctx.config_echo = echo_config("optimize", kv);
      ctx.hash = bbspectra::config_hash(ctx.config_echo);
      rc = run_optimize(opt, ctx);
    } else if (csweep->parsed()) {
      std::ostringstream eps, grids;
      for (double v : sweep.eps) eps << format_double17(v) << ";";
      for (int g : sweep.grids) grids << g << ";";
      std::map<std::string, std::string> kv{{"domain", sweep.domain},
                                            {"eps", eps.str()},
                                            {"grids", grids.str()},
                                            {"grid", std::to_string(sweep.grid)},
                                            {"mbar", format_double17(sweep.mbar)},
                                            {"munder", format_double17(sweep.munder)}};
      ctx.config_echo = echo_config("sweep", kv);
      ctx.hash = bbspectra::config_hash(ctx.config_echo);
      rc = run_sweep(sweep, ctx);
    } else if (cverify->parsed()) {
      std::map<std::string, std::string> kv{{"quick", quick ? "1" : "0"},
                                            {"strict", strict ? "1" : "0"}};
      ctx.config_echo = echo_config("verify", kv);
      ctx.hash = bbspectra::config_hash(ctx.config_echo);
      rc = run_verify(quick, strict, ctx);
    }
    ctx.finish();
    return rc;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
