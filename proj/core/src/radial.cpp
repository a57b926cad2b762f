// Copyright (c) the bbspectra developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "bbspectra/radial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace bbspectra {

double unit_ball_radius(int N) {
  if (N < 1) throw std::invalid_argument("unit_ball_radius: N must be >= 1");
  return std::pow(std::tgamma(N / 2.0 + 1.0), 1.0 / N) / std::sqrt(M_PI);
}

double unit_sphere_area(int N) {
  return N * std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0 + 1.0);
}

namespace {

// First zero of the radial ground mode of the Laplacian in N dimensions
// (J_{N/2-1} for N=2; elementary for N=1,3). Bounds the bisection bracket.
double first_radial_zero(int N) {
  switch (N) {
    case 1: return M_PI / 2.0;
    case 2: return 2.404825557695773;
    case 3: return M_PI;
    default: throw std::invalid_argument("radial solver supports N in {1,2,3}");
  }
}

struct LegState {
  double w, dw;
};

// RK4 on w'' + (N-1)/r w' + c w = 0 with constant c, fixed step h (signed).
inline LegState rk4_step(int N, double c, double r, LegState s, double h) {
  auto f = [&](double rr, const LegState& y) {
    double ddw = -c * y.w;
    if (N > 1) ddw -= (N - 1) / rr * y.dw;
    return LegState{y.dw, ddw};
  };
  const LegState k1 = f(r, s);
  const LegState k2 = f(r + 0.5 * h, {s.w + 0.5 * h * k1.w, s.dw + 0.5 * h * k1.dw});
  const LegState k3 = f(r + 0.5 * h, {s.w + 0.5 * h * k2.w, s.dw + 0.5 * h * k2.dw});
  const LegState k4 = f(r + h, {s.w + h * k3.w, s.dw + h * k3.dw});
  return {s.w + h / 6.0 * (k1.w + 2 * k2.w + 2 * k3.w + k4.w),
          s.dw + h / 6.0 * (k1.dw + 2 * k2.dw + 2 * k3.dw + k4.dw)};
}

struct ShootingGrid {
  int N;
  double mbar, munder, r0, R;
  std::size_t n_in, n_out;
  double h_in, h_out;
};

// Inner leg: series start near 0 (regular solution, w(0)=1, w'(0)=0), then
// RK4 outward. Fills values if out != nullptr (w at nodes 0..n_in).
LegState integrate_inner(const ShootingGrid& g, double lam, std::vector<double>* w_out,
                         std::vector<double>* dw_out) {
  const double c = lam * g.mbar;
  const double a1 = -c / (2.0 * g.N);
  const double a2 = -c * a1 / (4.0 * (g.N + 2.0));
  auto series = [&](double r) {
    const double r2 = r * r;
    return LegState{1.0 + a1 * r2 + a2 * r2 * r2, 2.0 * a1 * r + 4.0 * a2 * r2 * r};
  };
  const std::size_t n_series = std::min<std::size_t>(10, g.n_in);
  LegState s{};
  for (std::size_t i = 0; i <= g.n_in; ++i) {
    const double r = i * g.h_in;
    if (i <= n_series) {
      s = series(r);
    } else {
      s = rk4_step(g.N, c, (i - 1) * g.h_in, s, g.h_in);
    }
    if (w_out) (*w_out)[i] = s.w;
    if (dw_out) (*dw_out)[i] = s.dw;
  }
  return s;
}

// Outer leg integrated inward from R to r0. Dirichlet flavor starts from
// w(R)=0, w'(R)=-1; decay flavor from the asymptotic Robin seed. Fills nodes
// n_in..n_in+n_out of the value arrays when given (scaled later).
LegState integrate_outer(const ShootingGrid& g, double lam, bool dirichlet_at_R,
                         std::vector<double>* w_out, std::vector<double>* dw_out) {
  const double c = -lam * g.munder;
  LegState s{};
  if (dirichlet_at_R) {
    s = {0.0, -1.0};
  } else {
    const double q = std::sqrt(lam * g.munder);
    s = {1.0, -(q + (g.N - 1) / (2.0 * g.R))};
  }
  const std::size_t base = g.n_in;
  if (w_out) (*w_out)[base + g.n_out] = s.w;
  if (dw_out) (*dw_out)[base + g.n_out] = s.dw;
  for (std::size_t i = g.n_out; i-- > 0;) {
    const double r = g.r0 + (i + 1) * g.h_out;
    s = rk4_step(g.N, c, r, s, -g.h_out);
    if (w_out) (*w_out)[base + i] = s.w;
    if (dw_out) (*dw_out)[base + i] = s.dw;
  }
  return s;
}

// Matching defect: difference of log-derivatives at r0.
double matching_defect(const ShootingGrid& g, double lam, bool dirichlet_at_R) {
  const LegState in = integrate_inner(g, lam, nullptr, nullptr);
  const LegState out = integrate_outer(g, lam, dirichlet_at_R, nullptr, nullptr);
  return in.dw / in.w - out.dw / out.w;
}

ShootingGrid make_grid(int N, double mbar, double munder, double r0, double R,
                       double lam_hi, double steps_per_scale) {
  ShootingGrid g;
  g.N = N;
  g.mbar = mbar;
  g.munder = munder;
  g.r0 = r0;
  g.R = R;
  const double scale = std::min({r0, 1.0 / std::sqrt(lam_hi * munder), 1.0 / std::sqrt(lam_hi * mbar)});
  const double h_target = scale / steps_per_scale;
  auto even_ceil = [](double x) {
    auto n = static_cast<std::size_t>(std::ceil(x));
    return n + (n % 2);
  };
  g.n_in = std::max<std::size_t>(16, even_ceil(r0 / h_target));
  g.n_out = std::max<std::size_t>(16, even_ceil((R - r0) / h_target));
  g.h_in = r0 / g.n_in;
  g.h_out = (R - r0) / g.n_out;
  return g;
}

double bisect_lambda(const ShootingGrid& g, bool dirichlet_at_R, double lam_lo, double lam_hi,
                     double rel_tol) {
  double f_lo = matching_defect(g, lam_lo, dirichlet_at_R);
  double f_hi = matching_defect(g, lam_hi, dirichlet_at_R);
  if (!(f_lo > 0.0) || !(f_hi < 0.0))
    throw std::runtime_error("bracket failure: matching defect does not change sign");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lam_lo + lam_hi);
    const double f = matching_defect(g, mid, dirichlet_at_R);
    if (f > 0.0) {
      lam_lo = mid;
      f_lo = f;
    } else {
      lam_hi = mid;
      f_hi = f;
    }
    if (lam_hi - lam_lo <= rel_tol * lam_hi) return 0.5 * (lam_lo + lam_hi);
  }
  throw std::runtime_error("radial solver: tolerance not reached");
}

// Simpson weights on [0, n] with even n, spacing h.
double simpson(const std::vector<double>& f, std::size_t first, std::size_t last, double h) {
  double s = f[first] + f[last];
  for (std::size_t i = first + 1; i < last; ++i) s += f[i] * ((i - first) % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

RadialProfile assemble_profile(const ShootingGrid& g, double lam, bool dirichlet_at_R) {
  RadialProfile p;
  p.dim = g.N;
  p.mbar = g.mbar;
  p.munder = g.munder;
  p.r0 = g.r0;
  p.lambda0 = lam;
  p.R = g.R;
  p.i_r0 = g.n_in;

  const std::size_t total = g.n_in + g.n_out + 1;
  p.r.resize(total);
  p.w.resize(total);
  p.dw.resize(total);
  for (std::size_t i = 0; i <= g.n_in; ++i) p.r[i] = i * g.h_in;
  for (std::size_t i = 1; i <= g.n_out; ++i) p.r[g.n_in + i] = g.r0 + i * g.h_out;

  integrate_inner(g, lam, &p.w, &p.dw);
  std::vector<double> wo(total), dwo(total);
  integrate_outer(g, lam, dirichlet_at_R, &wo, &dwo);
  // Scale the outer leg so w is continuous at r0; overwrite nodes past r0.
  const double scale = p.w[g.n_in] / wo[g.n_in];
  for (std::size_t i = g.n_in + 1; i < total; ++i) {
    p.w[i] = scale * wo[i];
    p.dw[i] = scale * dwo[i];
  }
  p.match_defect = std::abs(p.dw[g.n_in] - scale * dwo[g.n_in]) / std::abs(p.dw[g.n_in]);
  p.normalize(Normalization::L2Domain);
  return p;
}

}  // namespace

void RadialProfile::normalize(Normalization tag) {
  const double area = unit_sphere_area(dim);
  // The weighted integrand jumps at r0: per-leg arrays with the leg's own
  // constant weight at the shared node.
  const double win = tag == Normalization::WeightedMass ? mbar : 1.0;
  const double wout = tag == Normalization::WeightedMass ? -munder : 1.0;
  std::vector<double> f(r.size());
  for (std::size_t i = 0; i <= i_r0; ++i) f[i] = win * w[i] * w[i] * std::pow(r[i], dim - 1);
  const double h_in = r[1] - r[0];
  const double inner_part = simpson(f, 0, i_r0, h_in);
  for (std::size_t i = i_r0; i < r.size(); ++i)
    f[i] = wout * w[i] * w[i] * std::pow(r[i], dim - 1);
  const double h_out = r[i_r0 + 1] - r[i_r0];
  const double integral = area * (inner_part + simpson(f, i_r0, r.size() - 1, h_out));
  if (integral <= 0.0) throw std::runtime_error("radial normalization: nonpositive integral");
  const double s = 1.0 / std::sqrt(integral);
  for (auto& x : w) x *= s;
  for (auto& x : dw) x *= s;
  norm_tag = tag;
}

double RadialProfile::value_at(double radius) const {
  if (radius <= 0.0) return w.front();
  if (radius >= R) return 0.0;
  // Two uniform sub-grids; locate the leg first.
  const double h_in = r[1] - r[0];
  const double h_out = r[i_r0 + 1] - r[i_r0];
  std::size_t i;
  if (radius <= r0) {
    i = std::min<std::size_t>(static_cast<std::size_t>(radius / h_in), i_r0 - 1);
  } else {
    i = i_r0 + std::min<std::size_t>(static_cast<std::size_t>((radius - r0) / h_out),
                                     r.size() - i_r0 - 2);
  }
  const double t = (radius - r[i]) / (r[i + 1] - r[i]);
  return (1.0 - t) * w[i] + t * w[i + 1];
}

RadialProfile solve_limit_eigen(int N, double mbar, double munder, double R,
                                const RadialOptions& opts) {
  if (mbar <= 0.0 || munder <= 0.0)
    throw std::invalid_argument("solve_limit_eigen: densities must be positive");
  const double r0 = unit_ball_radius(N);
  const double z = first_radial_zero(N);
  const double lam_hi = z * z / (mbar * r0 * r0);

  // Bootstrap pass to learn the decay length, then enlarge R if necessary.
  double R_eff = std::max(R, r0 + 12.0 / std::sqrt(0.5 * lam_hi * munder));
  for (int pass = 0; pass < 2; ++pass) {
    const ShootingGrid g = make_grid(N, mbar, munder, r0, R_eff, lam_hi, opts.steps_per_scale);
    const double lam = bisect_lambda(g, false, 1e-8 * lam_hi, lam_hi * (1.0 - 1e-9), opts.tol);
    const double R_needed = r0 + 12.0 / std::sqrt(lam * munder);
    if (R_eff >= R_needed || pass == 1) {
      return assemble_profile(g, lam, false);
    }
    R_eff = std::max(R_eff, r0 + 30.0 / std::sqrt(lam * munder));
  }
  throw std::logic_error("unreachable");
}

double lambda_finite_ball(int N, double mbar, double munder, double R,
                          const RadialOptions& opts) {
  const double r0 = unit_ball_radius(N);
  if (R <= r0) throw std::invalid_argument("lambda_finite_ball: R must exceed r0");
  const double z = first_radial_zero(N);
  const double lam_hi = z * z / (mbar * r0 * r0);
  const ShootingGrid g = make_grid(N, mbar, munder, r0, R, lam_hi, opts.steps_per_scale);
  return bisect_lambda(g, true, 1e-8 * lam_hi, lam_hi * (1.0 - 1e-9), opts.tol);
}

GapRateFit fit_gap_rate(const std::vector<std::pair<double, double>>& samples,
                        double lambda0, double solver_tol) {
  std::vector<std::pair<double, double>> usable;  // (R, log gap)
  const double floor = 10.0 * solver_tol * lambda0;
  for (const auto& [R, lam] : samples) {
    const double gap = lam - lambda0;
    if (gap > floor) usable.emplace_back(R, std::log(gap));
  }
  if (usable.size() < 4)
    throw std::runtime_error("resolution exceeded: fewer than 4 samples above the noise floor");
  std::sort(usable.begin(), usable.end());

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : usable) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(usable.size());
  GapRateFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 0; i + 1 < usable.size(); ++i)
    fit.pair_slopes.push_back((usable[i + 1].second - usable[i].second) /
                              (usable[i + 1].first - usable[i].first));
  return fit;
}

double decay_rate(const RadialProfile& profile) {
  const double q_est = std::sqrt(profile.lambda0 * profile.munder);
  if ((profile.R - profile.r0) * q_est < 8.0)
    throw std::invalid_argument("decay_rate: profile extends less than 8 decay lengths past r0");
  const double r_start = profile.R - (profile.R - profile.r0) / 3.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = profile.i_r0; i < profile.r.size(); ++i) {
    if (profile.r[i] < r_start) continue;
    const double v = profile.w[i] * std::pow(profile.r[i], (profile.dim - 1) / 2.0);
    if (!(v > 1e-290)) continue;  // underflow region excluded
    const double x = profile.r[i];
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 4) throw std::runtime_error("decay_rate: profile tail entirely under flow");
  const double nn = static_cast<double>(n);
  return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

void write_profile_csv(const RadialProfile& profile, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.precision(17);
  os << "r,w\n";
  for (std::size_t i = 0; i < profile.r.size(); ++i)
    os << profile.r[i] << "," << profile.w[i] << "\n";
}

std::string profile_summary_json(const RadialProfile& profile) {
  nlohmann::json j;
  j["N"] = profile.dim;
  j["mbar"] = profile.mbar;
  j["munder"] = profile.munder;
  j["r0"] = profile.r0;
  j["lambda0"] = profile.lambda0;
  j["R"] = profile.R;
  j["norm_tag"] = profile.norm_tag == Normalization::L2Domain ? "L2" : "weighted";
  return j.dump(2);
}

}  // namespace bbspectra
